/**
 * @file serialize.hpp
 * @brief JSON documents (schema_version 1) for requests, reports and the
 *        combinatorial outputs, with parsers that rebuild the typed values.
 *
 * Rationals are written as "p/q" strings ("p" when q = 1); field elements as
 * coefficient arrays; permutations as zero-based image arrays, with cycle
 * strings alongside in reports.
 */
#pragma once

#include "caps.hpp"
#include "coxeter.hpp"
#include "error.hpp"
#include "hilbstrata.hpp"
#include "pipeline.hpp"
#include "toruslat.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hilbres {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error("expected a rational as a \"p/q\" string or an integer");
}

inline Integer integer_from_json(const Json& j) {
    Rational r = rational_from_json(j);
    if (!is_integer(r)) throw Error("expected an integer");
    return r.get_num();
}

inline std::size_t size_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw Error(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

inline Json to_json(std::span<const Rational> v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const std::vector<Rational>& v) { return to_json(std::span<const Rational>(v)); }

inline std::vector<Rational> vector_from_json(const Json& j) {
    if (!j.is_array()) throw Error("expected an array of rationals");
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json to_json(const QMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

/// Rows of rationals; `cols` fixes the width of an empty matrix.
inline QMatrix matrix_from_json(const Json& j, std::optional<std::size_t> cols = std::nullopt) {
    if (!j.is_array()) throw Error("expected a matrix as an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) rows.push_back(vector_from_json(r));
    std::size_t width = cols ? *cols : (rows.empty() ? 0 : rows.front().size());
    QMatrix m(0, width);
    for (auto& r : rows) {
        if (r.size() != width) throw Error("matrix rows have different lengths");
        m.append_row(r);
    }
    return m;
}

/// Inline form "1,-1,0;0,1,-1": rows separated by ';', entries by ','.
inline QMatrix parse_inline_matrix(const std::string& text, std::optional<std::size_t> cols = std::nullopt) {
    std::vector<std::vector<Rational>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        if (row.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<Rational> r;
        std::stringstream es(row);
        std::string entry;
        while (std::getline(es, entry, ',')) {
            auto b = entry.find_first_not_of(" \t");
            auto e = entry.find_last_not_of(" \t");
            if (b == std::string::npos) throw Error("empty matrix entry");
            r.push_back(parse_rational(entry.substr(b, e - b + 1)));
        }
        rows.push_back(std::move(r));
    }
    std::size_t width = cols ? *cols : (rows.empty() ? 0 : rows.front().size());
    QMatrix m(0, width);
    for (auto& r : rows) {
        if (r.size() != width) throw Error("matrix rows have different lengths");
        m.append_row(r);
    }
    return m;
}

inline Json to_json(const FieldElement& x) { return to_json(x.coefficients()); }

inline Json to_json(const NumberField& f) {
    Json j;
    j["label"] = f.label();
    j["modulus"] = to_json(f.modulus());
    return j;
}

inline NumberField field_from_json(const Json& j, const Caps& caps = Caps{}) {
    if (j.is_null()) return NumberField();
    if (j.contains("cyclotomic")) return cyclotomic_field(size_from_json(j["cyclotomic"], "cyclotomic"), caps.cyclotomic_cap);
    if (!j.contains("modulus")) throw Error("field needs a modulus or a cyclotomic index");
    return NumberField(vector_from_json(j["modulus"]), j.value("label", std::string{}), caps.degree_cap);
}

/// A field entry is a rational or a coefficient array.
inline FieldElement field_element_from_json(const Json& j, const NumberField& f) {
    if (j.is_array()) return FieldElement(f, vector_from_json(j));
    return FieldElement(f, rational_from_json(j));
}

inline Json to_json(const FMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
        a.push_back(std::move(row));
    }
    return a;
}

inline FMatrix fmatrix_from_json(const Json& j, const NumberField& f) {
    if (!j.is_array() || j.empty()) throw Error("expected a non-empty matrix");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    FMatrix m(0, cols, FieldElement::zero(f));
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != cols) throw Error("matrix rows have different lengths");
        std::vector<FieldElement> row;
        for (const auto& x : r) row.push_back(field_element_from_json(x, f));
        m.append_row(row);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Permutations, lattices

inline Json to_json(const Perm& p) { return p.images(); }

/// Image array, or cycle string "(0 1)(2 3)" of the given degree.
inline Perm perm_from_json(const Json& j, std::size_t k) {
    if (j.is_array()) {
        Perm p(j.get<std::vector<int>>());
        if (p.degree() != k) throw Error("permutation degree differs from k");
        return p;
    }
    if (!j.is_string()) throw Error("permutation must be an image array or a cycle string");
    std::vector<std::vector<int>> cycles;
    const auto s = j.get<std::string>();
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] == ' ') {
            ++pos;
            continue;
        }
        if (s[pos] != '(') throw Error("malformed cycle string '" + s + "'");
        auto close = s.find(')', pos);
        if (close == std::string::npos) throw Error("malformed cycle string '" + s + "'");
        std::stringstream in(s.substr(pos + 1, close - pos - 1));
        std::vector<int> c;
        int x;
        while (in >> x) c.push_back(x);
        if (!in.eof()) throw Error("malformed cycle string '" + s + "'");
        if (!c.empty()) cycles.push_back(std::move(c));
        pos = close + 1;
    }
    return Perm::from_cycles(k, cycles);
}

inline Json to_json(const IntegralLattice& l) {
    Json j;
    j["denominator"] = to_json(l.denominator());
    Json rows = Json::array();
    for (const auto& r : l.hnf()) {
        Json row = Json::array();
        for (const auto& x : r) row.push_back(to_json(x));
        rows.push_back(std::move(row));
    }
    j["basis"] = std::move(rows);
    return j;
}

inline IntegralLattice lattice_from_json(const Json& j, std::size_t ambient) {
    std::vector<IntRow> rows;
    for (const auto& r : j.at("basis")) {
        IntRow row;
        for (const auto& x : r) row.push_back(integer_from_json(x));
        if (row.size() != ambient) throw Error("lattice row has the wrong length");
        rows.push_back(std::move(row));
    }
    return IntegralLattice::from_integer_rows(std::move(rows), ambient, integer_from_json(j.at("denominator")));
}

// ---------------------------------------------------------------------------
// Requests

inline Json to_json(const AnalysisRequest& r) {
    Json j;
    j["k"] = r.k;
    j["basis"] = to_json(r.basis);
    if (r.offset) j["offset"] = to_json(*r.offset);
    if (r.search_group) {
        Json g = Json::array();
        for (const auto& p : *r.search_group) g.push_back(to_json(p));
        j["search_group"] = std::move(g);
    }
    if (r.field_hint) j["field_hint"] = *r.field_hint;
    return j;
}

/// Request object: k, basis (rows or inline string), optional offset,
/// search_group (image arrays or cycle strings), field_hint and caps.
inline AnalysisRequest request_from_json(const Json& j, Caps caps = Caps{}) {
    if (!j.is_object()) throw Error("request must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "k" && key != "basis" && key != "offset" && key != "search_group" && key != "field_hint" &&
            key != "caps" && key != "schema_version")
            throw Error("unknown request field '" + key + "'");
    AnalysisRequest r;
    if (!j.contains("k")) throw Error("request needs k");
    r.k = size_from_json(j["k"], "k");
    if (!j.contains("basis")) throw Error("request needs a basis");
    r.basis = j["basis"].is_string() ? parse_inline_matrix(j["basis"].get<std::string>(), r.k)
                                     : matrix_from_json(j["basis"], r.k);
    if (j.contains("offset")) r.offset = vector_from_json(j["offset"]);
    if (j.contains("search_group")) {
        r.search_group.emplace();
        for (const auto& p : j["search_group"]) r.search_group->push_back(perm_from_json(p, r.k));
    }
    if (j.contains("field_hint")) r.field_hint = size_from_json(j["field_hint"], "field_hint");
    if (j.contains("caps")) {
        const auto& c = j["caps"];
        if (c.is_string()) {
            caps.apply(c.get<std::string>());
        } else {
            std::string spec;
            for (const auto& [key, value] : c.items())
                spec += key + "=" + std::to_string(size_from_json(value, key.c_str())) + ",";
            caps.apply(spec);
        }
    }
    r.caps = caps;
    return r;
}

// ---------------------------------------------------------------------------
// Coxeter components and analysis reports

inline Json to_json(const CoxeterComponent& c) {
    Json j;
    j["type"] = std::string(1, c.family);
    j["rank"] = c.rank;
    j["label"] = c.label;
    j["crystallographic"] = c.crystallographic;
    if (c.dihedral_order) j["dihedral_order"] = c.dihedral_order;
    j["group_order"] = to_json(c.group_order);
    Json roots = Json::array();
    for (const auto& r : c.simple_roots) roots.push_back(to_json(r));
    j["simple_roots"] = std::move(roots);
    j["coxeter_matrix"] = c.coxeter_matrix;
    return j;
}

inline CoxeterComponent component_from_json(const Json& j) {
    CoxeterComponent c;
    auto type = j.at("type").get<std::string>();
    if (type.size() != 1) throw Error("component type must be one letter");
    c.family = type[0];
    c.rank = j.at("rank").get<std::size_t>();
    c.label = j.at("label").get<std::string>();
    c.crystallographic = j.at("crystallographic").get<bool>();
    c.dihedral_order = j.value("dihedral_order", 0);
    c.group_order = integer_from_json(j.at("group_order"));
    for (const auto& r : j.at("simple_roots")) c.simple_roots.push_back(vector_from_json(r));
    c.coxeter_matrix = j.at("coxeter_matrix").get<std::vector<std::vector<int>>>();
    return c;
}

inline Json to_json(const AnalysisReport& r) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "analysis";
    j["k"] = r.k;
    j["subspace"] = {{"dim", r.subspace.dim()}, {"basis", to_json(r.subspace.basis())}};
    Json gens = Json::array(), cycles = Json::array();
    for (const auto& p : r.group_generators) {
        gens.push_back(to_json(p));
        cycles.push_back(p.cycle_string());
    }
    j["normalizer"] = {{"order", r.group_order}, {"generators", gens}, {"generator_cycles", cycles}};
    j["kernel_order"] = r.kernel_order;
    j["induced_order"] = r.induced_order;
    j["reflection_count"] = r.reflection_count;
    j["reflection_subgroup_order"] = r.reflection_subgroup_order;
    j["smooth"] = r.smooth;
    j["smooth_verdict"] = r.smooth_verdict;
    if (r.witness)
        j["witness"] = {{"images", to_json(*r.witness)}, {"cycles", r.witness->cycle_string()}};
    else
        j["witness"] = nullptr;
    j["all_real"] = r.all_real;
    j["classified"] = r.classified;
    Json comps = Json::array();
    for (const auto& c : r.coxeter_components) comps.push_back(to_json(c));
    j["coxeter_components"] = std::move(comps);
    j["weyl_product"] = r.weyl_product;
    j["doubled_module"] = {{"copy_dim", r.doubled_module.copy_dim},
                           {"hom_dim", r.doubled_module.hom_dim},
                           {"identity_intertwines", r.doubled_module.identity_intertwines}};
    const auto& f = r.filtration;
    Json tr = Json::array();
    for (const auto& t : f.translations)
        tr.push_back({{"element", to_json(t.element)},
                      {"cycles", t.element.cycle_string()},
                      {"vector", to_json(t.vector)},
                      {"order", to_json(t.order)}});
    j["filtration"] = {{"offset", to_json(f.offset)},
                       {"g_affine_order", f.g_affine_order},
                       {"g1_order", f.g1_order},
                       {"g0_order", f.g0_order},
                       {"translations", std::move(tr)},
                       {"lattice", to_json(f.lattice)},
                       {"enlarged_lattice", to_json(f.enlarged)},
                       {"isogeny_index", to_json(f.isogeny_index)}};
    j["gram_rank"] = r.gram_rank;
    j["gram_nondegenerate"] = r.gram_nondegenerate;
    j["meets_distinct_locus"] = r.meets_distinct_locus;
    if (r.field_hint)
        j["field_hint"] = {{"n", r.field_hint->n},
                           {"reflection_count", r.field_hint->reflection_count},
                           {"consistent", r.field_hint->consistent}};
    else
        j["field_hint"] = nullptr;
    return j;
}

inline void check_header(const Json& j, const char* kind) {
    if (!j.is_object() || j.value("schema_version", 0) != schema_version) throw Error("unsupported schema_version");
    if (j.value("kind", std::string{}) != kind) throw Error(std::string("expected a '") + kind + "' document");
}

inline AnalysisReport report_from_json(const Json& j) {
    check_header(j, "analysis");
    AnalysisReport r;
    r.k = j.at("k").get<std::size_t>();
    r.subspace = QSubspace::span(matrix_from_json(j.at("subspace").at("basis"), r.k));
    const auto& n = j.at("normalizer");
    r.group_order = n.at("order").get<std::size_t>();
    for (const auto& p : n.at("generators")) r.group_generators.push_back(perm_from_json(p, r.k));
    r.kernel_order = j.at("kernel_order").get<std::size_t>();
    r.induced_order = j.at("induced_order").get<std::size_t>();
    r.reflection_count = j.at("reflection_count").get<std::size_t>();
    r.reflection_subgroup_order = j.at("reflection_subgroup_order").get<std::size_t>();
    r.smooth = j.at("smooth").get<bool>();
    r.smooth_verdict = j.at("smooth_verdict").get<std::string>();
    if (!j.at("witness").is_null()) r.witness = perm_from_json(j["witness"].at("images"), r.k);
    r.all_real = j.at("all_real").get<bool>();
    r.classified = j.at("classified").get<bool>();
    for (const auto& c : j.at("coxeter_components")) r.coxeter_components.push_back(component_from_json(c));
    r.weyl_product = j.at("weyl_product").get<bool>();
    const auto& d = j.at("doubled_module");
    r.doubled_module = {d.at("copy_dim").get<std::size_t>(), d.at("hom_dim").get<std::size_t>(),
                        d.at("identity_intertwines").get<bool>()};
    const auto& f = j.at("filtration");
    r.filtration.offset = vector_from_json(f.at("offset"));
    r.filtration.g_affine_order = f.at("g_affine_order").get<std::size_t>();
    r.filtration.g1_order = f.at("g1_order").get<std::size_t>();
    r.filtration.g0_order = f.at("g0_order").get<std::size_t>();
    for (const auto& t : f.at("translations"))
        r.filtration.translations.push_back(
            {perm_from_json(t.at("element"), r.k), vector_from_json(t.at("vector")), integer_from_json(t.at("order"))});
    r.filtration.lattice = lattice_from_json(f.at("lattice"), r.k);
    r.filtration.enlarged = lattice_from_json(f.at("enlarged_lattice"), r.k);
    r.filtration.isogeny_index = integer_from_json(f.at("isogeny_index"));
    r.gram_rank = j.at("gram_rank").get<std::size_t>();
    r.gram_nondegenerate = j.at("gram_nondegenerate").get<bool>();
    r.meets_distinct_locus = j.at("meets_distinct_locus").get<bool>();
    if (!j.at("field_hint").is_null()) {
        const auto& h = j["field_hint"];
        r.field_hint = FieldHintCheck{h.at("n").get<std::size_t>(), h.at("reflection_count").get<std::size_t>(),
                                      h.at("consistent").get<bool>()};
    }
    return r;
}

// ---------------------------------------------------------------------------
// Combinatorial documents

inline Json to_json(const Partition& p) { return p.parts(); }

inline Json to_json(const StaircaseIdeal& s) {
    Json j;
    j["steps"] = s.steps();
    j["generators"] = s.generators();
    return j;
}

inline StaircaseIdeal staircase_from_json(const Json& j) { return StaircaseIdeal(j.at("steps").get<std::vector<int>>()); }

struct FixedPointsDocument {
    int k = 0;
    std::vector<StaircaseIdeal> ideals;
};

inline Json to_json(const FixedPointsDocument& d) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "fixed_points";
    j["k"] = d.k;
    j["count"] = d.ideals.size();
    Json a = Json::array();
    for (const auto& s : d.ideals) {
        Json e;
        e["partition"] = to_json(s.to_partition());
        e["colength"] = colength(s);
        e["ideal"] = to_json(s);
        a.push_back(std::move(e));
    }
    j["ideals"] = std::move(a);
    return j;
}

inline FixedPointsDocument fixed_points_from_json(const Json& j) {
    check_header(j, "fixed_points");
    FixedPointsDocument d;
    d.k = j.at("k").get<int>();
    for (const auto& e : j.at("ideals")) d.ideals.push_back(staircase_from_json(e.at("ideal")));
    if (j.at("count").get<std::size_t>() != d.ideals.size()) throw Error("count does not match the listed ideals");
    return d;
}

inline Json to_json(const StrataPoset& p) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "strata";
    j["k"] = p.k;
    j["count"] = p.elements.size();
    Json strata = Json::array();
    for (const auto& delta : p.elements) {
        auto info = stratum_info(delta);
        strata.push_back({{"partition", to_json(delta)},
                          {"length", info.l},
                          {"dim_symmetric", info.dim_symmetric},
                          {"dim_fiber", info.dim_fiber},
                          {"dim", info.dim_hilbert_stratum},
                          {"sigma_order", to_json(info.sigma_order)}});
    }
    j["strata"] = std::move(strata);
    j["relation_count"] = p.relation_count();
    Json covers = Json::array();
    for (auto [a, b] : p.covers()) {
        const auto fine = p.elements[a].to_string(), coarse = p.elements[b].to_string();
        covers.push_back({{"fine", a},
                          {"coarse", b},
                          {"subdivision", fine + " is a subdivision of " + coarse},
                          {"closure", "stratum " + coarse + " lies in the closure of stratum " + fine}});
    }
    j["covers"] = std::move(covers);
    return j;
}

/// Rebuilds the poset from its element list (relations are recomputed and
/// checked against the stored counts).
inline StrataPoset strata_from_json(const Json& j) {
    check_header(j, "strata");
    StrataPoset p;
    p.k = j.at("k").get<int>();
    for (const auto& s : j.at("strata")) p.elements.emplace_back(s.at("partition").get<std::vector<int>>());
    const std::size_t n = p.elements.size();
    p.refines.assign(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) p.refines[a][b] = is_subdivision(p.elements[a], p.elements[b]).has_value();
    if (p.relation_count() != j.at("relation_count").get<std::size_t>()) throw Error("relation count mismatch");
    return p;
}

inline Json to_json(const KummerStratum& s) {
    Json torsion = Json::object();
    for (std::size_t i = 0; i < 16; ++i)
        if (s.multiplicities[i]) torsion[torsion_label(i)] = s.multiplicities[i];
    return {{"torsion", std::move(torsion)}, {"pairs", s.pairs}, {"dim", s.dimension}};
}

inline KummerStratum kummer_stratum_from_json(const Json& j) {
    KummerStratum s;
    for (const auto& [label, m] : j.at("torsion").items()) {
        if (label.size() != 4 || label.find_first_not_of("01") != std::string::npos)
            throw Error("torsion label must be 4 binary digits");
        s.multiplicities[std::stoul(label, nullptr, 2)] = static_cast<std::uint8_t>(m.get<int>());
    }
    s.pairs = j.at("pairs").get<int>();
    s.dimension = j.at("dim").get<int>();
    if (s.dimension != 2 * s.pairs) throw Error("stratum dimension must be twice the pair count");
    return s;
}

inline Json to_json(const KummerStrata& k) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "kummer";
    j["n"] = k.n;
    j["involution_trivial"] = k.involution_trivial;
    if (k.involution_trivial) j["note"] = "involution acts trivially on the Kummer fiber";
    j["count"] = k.strata.size();
    Json a = Json::array();
    for (const auto& s : k.strata) a.push_back(to_json(s));
    j["strata"] = std::move(a);
    return j;
}

inline KummerStrata kummer_from_json(const Json& j) {
    check_header(j, "kummer");
    KummerStrata k;
    k.n = j.at("n").get<int>();
    k.involution_trivial = j.at("involution_trivial").get<bool>();
    for (const auto& s : j.at("strata")) k.strata.push_back(kummer_stratum_from_json(s));
    return k;
}

struct GenericityDocument {
    NumberField field;
    FMatrix j;
    GenericityResult result;
};

inline Json to_json(const GenericityDocument& d) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "genericity";
    j["field"] = to_json(d.field);
    j["j"] = to_json(d.j);
    j["generic"] = d.result.generic;
    j["endo_dim"] = d.result.endo_dim;
    Json e = Json::array();
    for (const auto& m : d.result.endomorphisms) e.push_back(to_json(m));
    j["endomorphisms"] = std::move(e);
    return j;
}

inline GenericityDocument genericity_from_json(const Json& j) {
    check_header(j, "genericity");
    GenericityDocument d;
    d.field = field_from_json(j.at("field"));
    d.j = fmatrix_from_json(j.at("j"), d.field);
    d.result.generic = j.at("generic").get<bool>();
    d.result.endo_dim = j.at("endo_dim").get<std::size_t>();
    for (const auto& m : j.at("endomorphisms")) d.result.endomorphisms.push_back(matrix_from_json(m, d.j.cols()));
    return d;
}

/// Complex structure file: {"field": null | {"modulus": [...]} | {"cyclotomic": N}, "matrix": rows}.
inline ComplexStructureMatrix complex_structure_from_json(const Json& j, NumberField* field_out = nullptr,
                                                          const Caps& caps = Caps{}) {
    if (!j.is_object() || !j.contains("matrix")) throw Error("complex structure file needs a matrix");
    auto field = field_from_json(j.value("field", Json()), caps);
    if (field_out) *field_out = field;
    return ComplexStructureMatrix(fmatrix_from_json(j["matrix"], field));
}

inline Json error_json(const Error& e) {
    Json j;
    j["schema_version"] = schema_version;
    j["kind"] = "error";
    j["error"] = {{"message", e.what()}, {"stage", e.stage().empty() ? Json(nullptr) : Json(e.stage())}};
    return j;
}

} // namespace hilbres
