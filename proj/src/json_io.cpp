#include "sdk/json_io.hpp"

#include "sdk/errors.hpp"

#include <fstream>
#include <sstream>

namespace sdk {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& need(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
Mat<T> matrix_from_json(const json& j, const std::function<T(const json&)>& entry)
{
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        bad("matrix must be a nonempty list of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Mat<T> m(rows, cols, entry(j[0][0]));
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            bad("ragged matrix");
        for (int k = 0; k < cols; ++k)
            m(i, k) = entry(j[i][k]);
    }
    return m;
}

json deligne_to_json(const DeligneReport& d)
{
    return {{"in_group", d.in_group},
            {"weight_central", d.weight_central},
            {"hodge_types", d.hodge_types_ok},
            {"cartan", d.cartan_ok},
            {"lie_dimension", d.lie_dimension},
            {"hodge_residual", d.hodge_residual},
            {"cartan_max_eigenvalue", d.cartan_max_eigenvalue}};
}

}  // namespace

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (!j.is_string())
        bad("rational must be a \"p/q\" string or an integer, got " + j.dump());
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        bad("bad rational " + j.dump() + ": " + e.what());
    }
}

json rational_to_json(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

json complex_to_json(Complex z, int precision_bits)
{
    return {{"re", z.real()}, {"im", z.imag()}, {"precision_bits", precision_bits}};
}

json complex_matrix_to_json(const CMat& m, int precision_bits)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(complex_to_json(m(i, k), precision_bits));
        rows.push_back(row);
    }
    return rows;
}

json int_matrix_to_json(const IntMat& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

IntMat int_matrix_from_json(const json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        bad("integer matrix must be a nonempty list of rows");
    IntMat m(j.size(), j[0].size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != j[0].size())
            bad("ragged integer matrix");
        for (size_t k = 0; k < j[i].size(); ++k) {
            if (!j[i][k].is_number_integer())
                bad("integer matrix entry " + j[i][k].dump());
            m(i, k) = j[i][k].get<std::int64_t>();
        }
    }
    return m;
}

NumberField field_from_json(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "Q")
        return NumberField::rationals();
    const json& p = need(j, "min_poly");
    if (!p.is_array() || p.size() < 2)
        bad("min_poly needs at least two coefficients");
    std::vector<Rational> c;
    for (const json& x : p)
        c.push_back(rational_from_json(x));
    try {
        return NumberField(c);
    } catch (const Error& e) {
        bad(std::string("bad field: ") + e.what());
    }
}

json field_to_json(const NumberField& f)
{
    if (f.degree() == 1)
        return "Q";
    json p = json::array();
    for (int i = 0; i <= f.degree(); ++i)
        p.push_back(rational_to_json(f.min_poly().coeff(i)));
    return {{"min_poly", p}};
}

FieldElement element_from_json(const json& j, const NumberField& f)
{
    if (j.is_array()) {
        if (static_cast<int>(j.size()) > f.degree())
            bad("element has more coefficients than the field degree");
        std::vector<Rational> c;
        for (const json& x : j)
            c.push_back(rational_from_json(x));
        c.resize(f.degree());
        return f.element(c);
    }
    return f.from_rational(rational_from_json(j));
}

json element_to_json(const FieldElement& x)
{
    if (x.is_rational())
        return rational_to_json(x.rational_value());
    json c = json::array();
    for (const Rational& q : x.coeffs())
        c.push_back(rational_to_json(q));
    return c;
}

KElement k_element_from_json(const json& j, const CMExtension& k)
{
    if (j.is_object())
        return k.element(element_from_json(need(j, "a"), k.base()), element_from_json(need(j, "b"), k.base()));
    return k.from_base(element_from_json(j, k.base()));
}

FQuat quaternion_from_json(const json& j, const FQuatAlgebra& d)
{
    const NumberField& f = d.a().field();
    if (!j.is_array())
        return d.scalar(element_from_json(j, f));
    if (j.size() != 4)
        bad("quaternion needs four coefficients in the basis 1, l, m, lm");
    return d.element(element_from_json(j[0], f), element_from_json(j[1], f), element_from_json(j[2], f),
                     element_from_json(j[3], f));
}

QK k_quaternion_from_json(const json& j, const SecondKindData& d)
{
    auto alg = d.algebra();
    if (!j.is_array() || j.size() != 4)
        return alg.scalar(k_element_from_json(j, d.cm()));
    return alg.element(k_element_from_json(j[0], d.cm()), k_element_from_json(j[1], d.cm()),
                       k_element_from_json(j[2], d.cm()), k_element_from_json(j[3], d.cm()));
}

namespace {

FactorSpec factor_from_json(const json& j)
{
    FactorSpec f;
    std::string type = need(j, "type").get<std::string>();
    if (type == "A") {
        f.kind = FactorSpec::Kind::TypeA;
        const json& s = need(j, "space");
        if (s.value("kind", "hermitian") != "hermitian")
            bad("type A factors need a hermitian space");
        f.base = field_from_json(s.value("field", json("Q")));
        f.delta = element_from_json(need(s, "delta"), *f.base);
        if (s.contains("algebra")) {
            const json& a = s.at("algebra");
            try {
                f.d0 = FQuatAlgebra(element_from_json(need(a, "a"), *f.base), element_from_json(need(a, "b"), *f.base));
            } catch (const Error& e) {
                if (e.code() == Errc::ParseError)
                    throw;
                bad(std::string("bad quaternion algebra: ") + e.what());
            }
        }
        f.degree = j.value("degree", f.d0 ? 2 : 1);
        const json& g = need(s, "gram");
        if (!g.is_array() || g.empty())
            bad("gram must be a nonempty list");
        for (const json& x : g) {
            if (x.is_object()) {
                if (!element_from_json(need(x, "b"), *f.base).is_zero())
                    f.warnings.push_back("gram entry " + x.dump() + " is not in F; only its F part is kept");
                f.gram.push_back(element_from_json(need(x, "a"), *f.base));
            } else {
                f.gram.push_back(element_from_json(x, *f.base));
            }
        }
    } else if (type == "D") {
        f.kind = FactorSpec::Kind::TypeD;
        const json& s = need(j, "space");
        if (s.value("kind", "skew") != "skew")
            bad("type D factors need a skew-hermitian space");
        NumberField base = field_from_json(s.value("field", json("Q")));
        const json& a = need(s, "algebra");
        try {
            FQuatAlgebra d(element_from_json(need(a, "a"), base), element_from_json(need(a, "b"), base));
            std::vector<FQuat> gram;
            for (const json& x : need(s, "gram"))
                gram.push_back(quaternion_from_json(x, d));
            f.skew = SkewHermitianSpace(d, gram, quaternion_from_json(need(s, "r"), d));
        } catch (const Error& e) {
            if (e.code() == Errc::ParseError)
                throw;
            bad(std::string("bad skew-hermitian space: ") + e.what());
        }
    } else {
        f.kind = FactorSpec::Kind::Other;
        f.other_type = type;
        f.other_rank = j.value("rank", 0);
    }
    return f;
}

}  // namespace

DatumSpec spec_from_json(const json& j)
{
    try {
        DatumSpec s;
        s.name = j.value("name", "");
        for (const json& f : need(j, "factors"))
            s.factors.push_back(factor_from_json(f));
        if (j.contains("center")) {
            const json& c = j.at("center");
            CenterSpec cs;
            cs.rank = need(c, "rank").get<int>();
            for (const json& g : c.value("galois", json::array()))
                cs.galois.push_back(int_matrix_from_json(g));
            cs.c = int_matrix_from_json(need(c, "c"));
            s.center = cs;
        }
        if (j.contains("kernel_points"))
            s.kernel_generators = j.at("kernel_points").get<std::vector<int>>();
        return s;
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        bad(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error(Errc::ParseError, "cannot write " + path);
    out << j.dump(2) << "\n";
}

DatumSpec load_spec(const std::string& path) { return spec_from_json(read_json_file(path)); }

json to_json(const FactorClass& c)
{
    json j = {{"label", c.label}, {"admissible", c.admissible}};
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

json to_json(const PlaceReport& p)
{
    json j = {{"place", p.place}, {"compact", p.compact}};
    if (!p.checked) {
        j["status"] = "not checked";
        return j;
    }
    j["status"] = "checked";
    j["signature"] = {p.p, p.q};
    j["char_conj"] = p.char_conj;
    j["c_routes_agree"] = p.c_routes_agree;
    j["borel"] = p.borel_ok;
    j["in_model"] = p.in_model;
    j["tci_residual"] = p.tci_residual;
    j["tci_ok"] = p.tci_ok;
    j["deligne"] = deligne_to_json(p.deligne);
    j["special_node"] = p.special_node;
    return j;
}

json to_json(const BundleReport& r)
{
    bool char_conj = true;
    DeligneReport agg{true, true, true, true, 0, 0, 0};
    json places = json::array();
    for (const PlaceReport& p : r.places) {
        places.push_back(to_json(p));
        if (!p.checked)
            continue;
        char_conj = char_conj && p.char_conj;
        agg.in_group = agg.in_group && p.deligne.in_group;
        agg.weight_central = agg.weight_central && p.deligne.weight_central;
        agg.hodge_types_ok = agg.hodge_types_ok && p.deligne.hodge_types_ok;
        agg.cartan_ok = agg.cartan_ok && p.deligne.cartan_ok;
        agg.lie_dimension = std::max(agg.lie_dimension, p.deligne.lie_dimension);
        agg.hodge_residual = std::max(agg.hodge_residual, p.deligne.hodge_residual);
        agg.cartan_max_eigenvalue = std::max(agg.cartan_max_eigenvalue, p.deligne.cartan_max_eigenvalue);
    }
    json j = {{"kind", r.kind},
              {"label", r.label},
              {"place", places},
              {"theta_squared", r.theta_squared},
              {"equals_star", r.equals_star},
              {"char_conj", char_conj},
              {"deligne", deligne_to_json(agg)},
              {"seed", r.seed},
              {"torus_preserved", r.torus_preserved},
              {"dual_route", r.dual_route},
              {"center_inverted", r.center_inverted},
              {"transport", r.transport_ok},
              {"diagram", r.induced.diagram},
              {"theta_star", int_matrix_to_json(r.induced.theta_star)},
              {"ok", r.all_ok()}};
    return j;
}

json to_json(const DescentReport& r)
{
    json factors = json::array();
    for (const auto& f : r.factors)
        factors.push_back(to_json(f));
    json bundles = json::array();
    for (const auto& b : r.bundles)
        bundles.push_back(to_json(b));
    json hecke = json::array();
    for (const auto& h : r.hecke)
        hecke.push_back({{"q", json::parse(h.q)}, {"theta_q", h.theta_q}, {"descends_if_equal", h.descends_if_equal}});
    return {{"factors", factors},
            {"center_ok", r.center_ok},
            {"strongly_ADH", r.strongly_ADH},
            {"extension_ok", r.extension_ok},
            {"conjugate_point_ok", r.conjugate_point_ok},
            {"cocycle_ok", r.cocycle_ok},
            {"negative_control_rejected", r.negative_control_rejected},
            {"bundles", bundles},
            {"hecke", hecke},
            {"diagnostics", r.diagnostics},
            {"seed", r.seed},
            {"ok", r.all_ok()}};
}

json bundle_to_json(const InvolutionBundle& b, int precision_bits)
{
    json j = {{"kind", b.kind() == InvolutionBundle::Kind::TypeA ? "A" : "D"},
              {"label", b.label()},
              {"n", b.n()},
              {"m", b.m()},
              {"model_size", b.model_size()},
              {"torus", b.torus_description()},
              {"theta_on_characters", int_matrix_to_json(theta_on_characters(b))}};
    try {
        InducedMap im = induced_based_map(b);
        j["equals_star"] = im.equals_star;
        j["diagram"] = im.diagram;
        j["weyl_word"] = im.word;
    } catch (const Error& e) {
        j["equals_star"] = nullptr;
        j["induced_map_error"] = e.what();
    }
    const NumberField& base =
        b.kind() == InvolutionBundle::Kind::TypeA ? b.hermitian().base() : b.skew().base();
    json places = json::array();
    for (const RealEmbedding& v : real_embeddings(base, precision_bits)) {
        PlaceModel pm = model_at_place(b, v);
        Interval root = v.root();
        json p = {{"place", v.index()},
                  {"root", {{"lo", rational_to_json(root.lo)}, {"hi", rational_to_json(root.hi)}}},
                  {"compact", pm.compact},
                  {"group", pm.group},
                  {"form", complex_matrix_to_json(pm.form)}};
        const PlaceInfo& info = b.profile().places.at(v.index());
        p["split"] = info.split;
        if (info.signature)
            p["signature"] = {info.signature->p, info.signature->q};
        places.push_back(p);
    }
    j["places"] = places;
    if (b.kind() == InvolutionBundle::Kind::TypeA && !b.hermitian().warnings().empty())
        j["warnings"] = b.hermitian().warnings();
    return j;
}

std::vector<HeckeEntry> hecke_from_json(const json& j, const std::vector<InvolutionBundle>& bundles)
{
    try {
        int k = j.value("factor", 0);
        if (k < 0 || k >= static_cast<int>(bundles.size()))
            bad("factor index out of range");
        std::vector<json> mats;
        if (j.contains("qs"))
            mats.assign(j.at("qs").begin(), j.at("qs").end());
        else
            mats.push_back(need(j, "q"));
        const InvolutionBundle& b = bundles[k];
        std::vector<HeckeEntry> out;
        for (const json& m : mats) {
            HeckeResult r;
            if (b.kind() == InvolutionBundle::Kind::TypeD) {
                FQuatAlgebra d = b.skew().algebra();
                r = hecke_descent_condition(b, matrix_from_json<FQuat>(m, [&](const json& x) {
                    return quaternion_from_json(x, d);
                }));
            } else if (b.m() == 1) {
                const CMExtension& cm = b.hermitian().algebra().cm();
                r = hecke_descent_condition(b, matrix_from_json<KElement>(m, [&](const json& x) {
                    return k_element_from_json(x, cm);
                }));
            } else {
                const SecondKindData& sd = b.hermitian().algebra();
                r = hecke_descent_condition(b, matrix_from_json<QK>(m, [&](const json& x) {
                    return k_quaternion_from_json(x, sd);
                }));
            }
            out.push_back({m.dump(), r.theta_q, r.descends_if_equal});
        }
        return out;
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

}  // namespace sdk
