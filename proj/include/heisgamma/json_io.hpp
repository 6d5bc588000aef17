#pragma once

// JSON wire formats for every library type the command-line surface exposes.
// All scalar entries travel as strings in the scalar text grammar, so exact
// values round-trip bit-for-bit; keys are emitted in sorted order.

#include <string>
#include <vector>

#include <json.hpp>

#include "heisgamma/curvature.hpp"

namespace heisgamma {

using Json = nlohmann::json;

inline Json scalar_to_json(const Scalar& x) { return Json(to_string(x)); }

inline Scalar scalar_from_json(const Json& j, bool approx_mode) {
    Scalar out;
    if (j.is_string()) {
        out = parse_scalar(j.get<std::string>());
    } else if (j.is_number_integer()) {
        out = Scalar(static_cast<long long>(j.get<std::int64_t>()));
    } else if (j.is_number_float()) {
        out = Scalar::approx(j.get<double>());
    } else {
        fail(errc::malformed_input, "expected a scalar literal");
    }
    if (approx_mode && out.is_exact()) return Scalar::approx(out.to_double());
    return out;
}

inline Json vec3_to_json(const LieVector& v) {
    return Json::array({scalar_to_json(v[0]), scalar_to_json(v[1]), scalar_to_json(v[2])});
}

namespace detail {

inline Json mat3_rows_to_json(const Mat3& m) {
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(vec3_to_json(m.row(i)));
    return rows;
}

inline Mat3 mat3_rows_from_json(const Json& rows, bool approx_mode) {
    if (!rows.is_array() || rows.size() != 3)
        fail(errc::malformed_input, "expected three matrix rows");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || row.size() != 3)
            fail(errc::malformed_input, "expected three entries per matrix row");
        for (int j = 0; j < 3; ++j) m.at(i, j) = scalar_from_json(row[j], approx_mode);
    }
    return m;
}

}  // namespace detail

inline Json matrix_to_json(const Mat3& m) {
    return Json{{"matrix", detail::mat3_rows_to_json(m)}};
}

inline Mat3 matrix_from_json(const Json& j, bool approx_mode) {
    if (!j.is_object() || !j.contains("matrix"))
        fail(errc::malformed_input, "expected an object with a \"matrix\" key");
    return detail::mat3_rows_from_json(j.at("matrix"), approx_mode);
}

inline Json family_tag_to_json(const FamilyTag& tag) {
    Json params = Json::object();
    Json out{{"family", family_name(tag)}};
    struct Filler {
        Json& params;
        Json& out;
        void operator()(const Identity&) const {}
        void operator()(const Tau1& t) const {
            params["a3"] = scalar_to_json(t.a3);
            params["a6"] = scalar_to_json(t.a6);
        }
        void operator()(const Tau2& t) const {
            params["a3"] = scalar_to_json(t.a3);
            params["a5"] = scalar_to_json(t.a5);
        }
        void operator()(const Tau3& t) const {
            params["a1"] = scalar_to_json(t.a1);
            params["a2"] = scalar_to_json(t.a2);
            params["a6"] = scalar_to_json(t.a6);
        }
        void operator()(const Tau4& t) const {
            params["a5"] = scalar_to_json(t.a5);
            params["a6"] = scalar_to_json(t.a6);
        }
        void operator()(const Tau5& t) const {
            params["a2"] = scalar_to_json(t.a2);
            params["a3"] = scalar_to_json(t.a3);
            params["a5"] = scalar_to_json(t.a5);
            params["a6"] = scalar_to_json(t.a6);
        }
        void operator()(const Tau5Prime& t) const {
            params["a2"] = scalar_to_json(t.a2);
            params["a3"] = scalar_to_json(t.a3);
            params["a5"] = scalar_to_json(t.a5);
            params["a6"] = scalar_to_json(t.a6);
        }
        void operator()(const Tau6& t) const {
            out["k"] = t.k;
            params["a2"] = scalar_to_json(t.a2);
            params["a3"] = scalar_to_json(t.a3);
            params["a5"] = scalar_to_json(t.a5);
            params["a6"] = scalar_to_json(t.a6);
        }
    };
    std::visit(Filler{params, out}, tag);
    out["params"] = std::move(params);
    return out;
}

namespace detail {

inline Scalar param(const Json& params, const char* name, bool approx_mode) {
    if (!params.is_object() || !params.contains(name))
        fail(errc::malformed_input, std::string("missing parameter \"") + name + "\"");
    return scalar_from_json(params.at(name), approx_mode);
}

}  // namespace detail

inline FamilyTag family_tag_from_json(const Json& j, bool approx_mode) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        fail(errc::malformed_input, "expected an object with a \"family\" key");
    const std::string name = j.at("family").get<std::string>();
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    auto p = [&](const char* key) { return detail::param(params, key, approx_mode); };
    if (name == "identity") return Identity{};
    if (name == "tau1") return Tau1{p("a3"), p("a6")};
    if (name == "tau2") return Tau2{p("a3"), p("a5")};
    if (name == "tau3") return Tau3{p("a1"), p("a2"), p("a6")};
    if (name == "tau4") return Tau4{p("a5"), p("a6")};
    if (name == "tau5") return Tau5{p("a2"), p("a3"), p("a5"), p("a6")};
    if (name == "tau5prime") return Tau5Prime{p("a2"), p("a3"), p("a5"), p("a6")};
    if (name == "tau6") {
        if (!j.contains("k") || !j.at("k").is_number_integer())
            fail(errc::malformed_input, "family \"tau6\" requires an integer \"k\"");
        return Tau6{j.at("k").get<int>(), p("a2"), p("a3"), p("a5"), p("a6")};
    }
    fail(errc::malformed_input, "unknown family \"" + name + "\"");
}

// Accepts either a family chart or a raw matrix.
inline Automorphism automorphism_from_json(const Json& j, bool approx_mode, double tol) {
    if (j.is_object() && j.contains("family"))
        return make_family(family_tag_from_json(j, approx_mode), tol);
    if (j.is_object() && j.contains("matrix"))
        return Automorphism::make(matrix_from_json(j, approx_mode), tol);
    fail(errc::malformed_input, "expected a \"family\" chart or a \"matrix\"");
}

inline Json subgroup_to_json(const AutSubgroup& g) {
    Json elements = Json::array();
    for (const Automorphism& a : g.elements) elements.push_back(matrix_to_json(a.matrix()));
    Json factors = Json::array();
    for (int d : g.invariant_factors) factors.push_back(d);
    return Json{{"abelian", g.abelian},
                {"elements", std::move(elements)},
                {"invariant_factors", std::move(factors)},
                {"type", g.label}};
}

inline Json grading_to_json(const Grading& g) {
    Json labels = Json::array();
    Json components = Json::object();
    for (const GradingComponent& c : g.components) {
        labels.push_back(c.label);
        Json basis = Json::array();
        for (const LieVector& v : c.basis) basis.push_back(vec3_to_json(v));
        components[c.label] = std::move(basis);
    }
    Json orders = Json::array();
    for (int o : g.generator_orders) orders.push_back(o);
    return Json{{"components", std::move(components)},
                {"generator_orders", std::move(orders)},
                {"labels", std::move(labels)}};
}

inline Json bilinear_form_to_json(const BilinearForm& g) {
    return Json{{"basis", "omega"}, {"metric", detail::mat3_rows_to_json(g.matrix)}};
}

inline BilinearForm bilinear_form_from_json(const Json& j, bool approx_mode,
                                            double tol = 1e-9) {
    if (!j.is_object() || !j.contains("metric"))
        fail(errc::malformed_input, "expected an object with a \"metric\" key");
    if (j.contains("basis") &&
        (!j.at("basis").is_string() || j.at("basis").get<std::string>() != "omega"))
        fail(errc::malformed_input, "only the \"omega\" coframe basis is supported");
    return BilinearForm::make(detail::mat3_rows_from_json(j.at("metric"), approx_mode), tol);
}

inline Json adaptation_report_to_json(const AdaptationReport& r) {
    Json labels = Json::array();
    for (const std::string& s : r.component_labels) labels.push_back(s);
    Json norms = Json::array();
    for (const Scalar& x : r.component_norms) norms.push_back(scalar_to_json(x));
    Json cross = Json::array();
    for (const auto& row : r.cross_terms) {
        Json jrow = Json::array();
        for (const Scalar& x : row) jrow.push_back(scalar_to_json(x));
        cross.push_back(std::move(jrow));
    }
    Json pairs = Json::array();
    for (const std::string& s : r.lorentz_pairs) pairs.push_back(s);
    return Json{{"class", metric_class_name(r.classification)},
                {"component_labels", std::move(labels)},
                {"component_norms", std::move(norms)},
                {"cross_terms", std::move(cross)},
                {"degenerate_label", r.degenerate_label},
                {"lorentz_pairs", std::move(pairs)}};
}

inline Json reduction_to_json(const ReductionResult& r) {
    return Json{{"canonical", bilinear_form_to_json(r.canonical)},
                {"class", canonical_kind_name(r.cls.kind)},
                {"lambda", scalar_to_json(r.cls.lambda)},
                {"transform", matrix_to_json(r.transform.matrix())}};
}

// Non-zero curvature components as a sparse list with one-based indices:
// value = coefficient of the l-th frame vector in R(X_i, X_j) X_k.
inline Json curvature_to_json(const CurvatureTable& t, double tol = 1e-9) {
    Json out = Json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const Scalar& v = t.r[i][j][k][l];
                    if (v.is_zero(v.is_exact() ? 0.0 : tol)) continue;
                    out.push_back(Json{{"i", i + 1},
                                       {"j", j + 1},
                                       {"k", k + 1},
                                       {"l", l + 1},
                                       {"value", scalar_to_json(v)}});
                }
    return out;
}

}  // namespace heisgamma
