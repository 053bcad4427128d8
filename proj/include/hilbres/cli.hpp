/**
 * @file cli.hpp
 * @brief Command-line front end. Exit codes: 0 success, 1 domain error
 *        (error object on stdout in json mode), 2 usage error.
 */
#pragma once

#include "caps.hpp"
#include "error.hpp"
#include "hilbstrata.hpp"
#include "pipeline.hpp"
#include "sampling.hpp"
#include "serialize.hpp"
#include "toruslat.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hilbres::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("malformed JSON in '") + path + "': " + e.what(), "input");
    }
}

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

inline std::string vector_text(std::span<const Rational> v) {
    std::vector<std::string> parts;
    for (const auto& x : v) parts.push_back(to_string(x));
    return "(" + join(parts, ", ") + ")";
}

inline void analysis_table(const AnalysisReport& r, std::ostream& out) {
    out << "k                      " << r.k << "\n";
    out << "subspace dim           " << r.subspace.dim() << "\n";
    for (std::size_t i = 0; i < r.subspace.dim(); ++i) out << "  basis                " << vector_text(r.subspace.basis().row(i)) << "\n";
    std::vector<std::string> gens;
    for (const auto& g : r.group_generators) gens.push_back(g.cycle_string());
    out << "normalizer order       " << r.group_order << "\n";
    out << "  generators           " << (gens.empty() ? "-" : join(gens, " ")) << "\n";
    out << "kernel order           " << r.kernel_order << "\n";
    out << "induced order          " << r.induced_order << "\n";
    out << "reflections            " << r.reflection_count << " (subgroup order " << r.reflection_subgroup_order << ")\n";
    out << "verdict                " << r.smooth_verdict << "\n";
    if (r.witness) out << "  witness              " << r.witness->cycle_string() << "\n";
    out << "all real               " << (r.all_real ? "yes" : "no") << "\n";
    if (r.classified) {
        std::vector<std::string> labels;
        for (const auto& c : r.coxeter_components) labels.push_back(c.label);
        out << "coxeter type           " << (labels.empty() ? "trivial" : join(labels, " x ")) << "\n";
    } else {
        out << "coxeter type           not classified\n";
    }
    out << "weyl product           " << (r.weyl_product ? "yes" : "no") << "\n";
    out << "doubled module         Hom_G(U,U) dim " << r.doubled_module.hom_dim << ", identity intertwines "
        << (r.doubled_module.identity_intertwines ? "yes" : "no") << "\n";
    const auto& f = r.filtration;
    out << "filtration             |G0| " << f.g0_order << "  |G1| " << f.g1_order << "  |G_affine| " << f.g_affine_order
        << "\n";
    for (const auto& t : f.translations)
        if (t.order != 1)
            out << "  translation          " << t.element.cycle_string() << " -> " << vector_text(t.vector) << " order "
                << t.order.get_str() << "\n";
    out << "isogeny index          " << f.isogeny_index.get_str() << "\n";
    out << "gram nondegenerate     " << (r.gram_nondegenerate ? "yes" : "no") << "\n";
    out << "meets distinct locus   " << (r.meets_distinct_locus ? "yes" : "no") << "\n";
    if (r.field_hint)
        out << "field hint Q(zeta_" << r.field_hint->n << ")   " << r.field_hint->reflection_count << " reflections, "
            << (r.field_hint->consistent ? "consistent" : "INCONSISTENT") << "\n";
}

inline void fixed_points_table(const FixedPointsDocument& d, std::ostream& out) {
    out << "k = " << d.k << ", " << d.ideals.size() << " torus-fixed points\n";
    for (const auto& s : d.ideals) out << "  " << s.to_partition().to_string() << "  <" << join(s.generators(), ", ") << ">\n";
}

inline void strata_table(const StrataPoset& p, std::ostream& out) {
    out << "k = " << p.k << ", " << p.elements.size() << " strata, " << p.relation_count() << " subdivision relations\n";
    for (const auto& delta : p.elements) {
        auto info = stratum_info(delta);
        out << "  " << delta.to_string() << "  l=" << info.l << "  dim=" << info.dim_hilbert_stratum
            << "  |Sigma|=" << info.sigma_order.get_str() << "\n";
    }
    for (auto [a, b] : p.covers())
        out << "  " << p.elements[a].to_string() << " subdivides " << p.elements[b].to_string() << "; stratum "
            << p.elements[b].to_string() << " lies in the closure of " << p.elements[a].to_string() << "\n";
}

inline void kummer_table(const KummerStrata& k, std::ostream& out) {
    out << "n = " << k.n << ", " << k.strata.size() << " fixed strata";
    if (k.involution_trivial) out << " (involution acts trivially on the Kummer fiber)";
    out << "\n";
    for (const auto& s : k.strata) {
        std::vector<std::string> t;
        for (std::size_t i = 0; i < 16; ++i)
            if (s.multiplicities[i]) t.push_back(torsion_label(i) + ":" + std::to_string(s.multiplicities[i]));
        out << "  dim " << s.dimension << "  pairs " << s.pairs << "  torsion {" << join(t, ", ") << "}\n";
    }
}

inline void genericity_table(const GenericityDocument& d, std::ostream& out) {
    out << "field      " << (d.field.label().empty() ? "custom" : d.field.label()) << " (degree " << d.field.degree()
        << ")\n";
    out << "endo dim   " << d.result.endo_dim << "\n";
    out << "generic    " << (d.result.generic ? "yes" : "no") << "\n";
}

inline std::optional<std::vector<Rational>> parse_offset(const std::string& text, std::size_t k) {
    if (text.empty()) return std::nullopt;
    auto m = parse_inline_matrix(text);
    if (m.rows() != 1 || m.cols() != k) throw Error("offset must be one row of length k", "input");
    return m.row_vector(0);
}

} // namespace detail

/// Runs the tool on argv (argv[0] is the program name).
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact reflection-group and Hilbert-scheme stratum analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output = "json";
    std::uint64_t seed = 0;
    std::string caps_text;
    app.add_option("--output", output, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", seed, "seed for randomized inputs");
    app.add_option("--caps", caps_text, "cap overrides key=value,... (after HILBRES_CAPS)");

    auto* analyze_cmd = app.add_subcommand("analyze", "analyze a subspace U of Q^k");
    std::size_t k = 0;
    std::string basis_text, input_path, offset_text, search_text;
    std::optional<std::size_t> field_hint;
    bool random = false;
    analyze_cmd->add_option("--k", k, "ambient dimension");
    analyze_cmd->add_option("--basis", basis_text, "rows ';'-separated, entries ','-separated (default: sum-zero)");
    analyze_cmd->add_option("--input", input_path, "request file")->excludes("--basis");
    analyze_cmd->add_option("--offset", offset_text, "affine offset c, ','-separated");
    analyze_cmd->add_option("--search-group", search_text, "generators as cycle strings, ';'-separated");
    analyze_cmd->add_option("--field-hint", field_hint, "cross-check reflections over Q(zeta_N)");
    analyze_cmd->add_flag("--random", random, "random subspace with entries in {-1,0,1} (uses --seed)");

    auto* fixed_cmd = app.add_subcommand("fixed-points", "torus-fixed punctual subschemes of length k");
    int fixed_k = 0;
    fixed_cmd->add_option("--k", fixed_k, "length")->required();

    auto* strata_cmd = app.add_subcommand("strata", "diagonal strata and their subdivision order");
    int strata_k = 0;
    strata_cmd->add_option("--k", strata_k, "number of points")->required();

    auto* gen_cmd = app.add_subcommand("genericity", "genericity of a complex structure on Z^{2d}");
    std::string j_path;
    gen_cmd->add_option("--j", j_path, "complex structure file")->required();

    auto* kummer_cmd = app.add_subcommand("kummer", "fixed strata of the Kummer involution");
    int kummer_n = 0;
    kummer_cmd->add_option("--n", kummer_n, "Kummer dimension parameter")->required();

    auto* ginz_cmd = app.add_subcommand("ginzburg", "standard Weyl-group realization as an analysis request");
    std::string ginz_type;
    int ginz_rank = 0;
    bool ginz_analyze = false;
    ginz_cmd->add_option("--type", ginz_type, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
    ginz_cmd->add_option("--rank", ginz_rank, "rank")->required();
    ginz_cmd->add_flag("--analyze", ginz_analyze, "also run the analysis");

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    if (cargv.empty()) cargv.push_back("hilbres");
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    const bool json = output == "json";
    auto emit = [&](const Json& doc) { out << doc.dump(2) << "\n"; };

    Caps caps;
    try {
        caps = Caps::from_environment();
        caps.apply(caps_text);
    } catch (const Error& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (analyze_cmd->parsed()) {
            AnalysisRequest req;
            if (!input_path.empty()) {
                req = request_from_json(detail::read_json_file(input_path), caps);
            } else {
                if (k == 0 && !random) throw detail::UsageError("analyze needs --k, --input or --random");
                Sampler sampler(seed);
                if (k == 0) k = static_cast<std::size_t>(sampler.uniform(2, 6));
                req.k = k;
                req.caps = caps;
                if (random) {
                    req.basis = sampler.subspace_basis(k);
                } else if (!basis_text.empty()) {
                    req.basis = hilbres::detail::staged("input", [&] { return parse_inline_matrix(basis_text, k); });
                } else if (k <= caps.max_full_search_k || !search_text.empty()) {
                    req.basis = sum_zero_basis(k);
                } else {
                    req.basis = QMatrix(0, k);  // the cap check fires before the basis is used
                }
                req.offset = hilbres::detail::staged("input", [&] { return detail::parse_offset(offset_text, k); });
            }
            if (!search_text.empty()) {
                req.search_group = hilbres::detail::staged("input", [&] {
                    std::vector<Perm> gens;
                    std::stringstream ss(search_text);
                    std::string item;
                    while (std::getline(ss, item, ';'))
                        if (item.find_first_not_of(" ") != std::string::npos) gens.push_back(perm_from_json(item, req.k));
                    return gens;
                });
            }
            if (field_hint) req.field_hint = field_hint;
            auto report = analyze(req);
            if (json)
                emit(to_json(report));
            else
                detail::analysis_table(report, out);
        } else if (fixed_cmd->parsed()) {
            FixedPointsDocument d{fixed_k, torus_fixed_points(fixed_k, caps.partition_cap)};
            json ? emit(to_json(d)) : detail::fixed_points_table(d, out);
        } else if (strata_cmd->parsed()) {
            if (strata_k >= 1 && static_cast<std::size_t>(strata_k) > caps.partition_cap)
                throw Error("partition cap exceeded");
            auto p = strata_poset(strata_k, caps.poset_cap);
            json ? emit(to_json(p)) : detail::strata_table(p, out);
        } else if (gen_cmd->parsed()) {
            GenericityDocument d;
            auto cs = hilbres::detail::staged("input", [&] {
                return complex_structure_from_json(detail::read_json_file(j_path), &d.field, caps);
            });
            d.j = cs.matrix();
            d.result = genericity_check(cs);
            json ? emit(to_json(d)) : detail::genericity_table(d, out);
        } else if (kummer_cmd->parsed()) {
            auto strata = kummer_fixed_strata(kummer_n, caps.kummer_cap);
            json ? emit(to_json(strata)) : detail::kummer_table(strata, out);
        } else if (ginz_cmd->parsed()) {
            auto req = ginzburg_example(ginz_type[0], ginz_rank);
            req.caps = caps;
            Json doc;
            doc["schema_version"] = schema_version;
            doc["kind"] = "ginzburg";
            doc["type"] = ginz_type;
            doc["rank"] = ginz_rank;
            doc["request"] = to_json(req);
            if (ginz_analyze) doc["report"] = to_json(analyze(req));
            if (json) {
                emit(doc);
            } else {
                out << "type " << ginz_type << " rank " << ginz_rank << ": k = " << req.k << "\n";
                for (std::size_t i = 0; i < req.basis.rows(); ++i)
                    out << "  basis " << detail::vector_text(req.basis.row(i)) << "\n";
                if (ginz_analyze) detail::analysis_table(analyze(req), out);
            }
        }
    } catch (const detail::UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        if (json) emit(error_json(e));
        err << "error" << (e.stage().empty() ? "" : " [" + e.stage() + "]") << ": " << e.what() << "\n";
        return exit_domain;
    } catch (const Json::exception& e) {
        Error wrapped(std::string("malformed input: ") + e.what(), "input");
        if (json) emit(error_json(wrapped));
        err << "error [input]: " << wrapped.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}

} // namespace hilbres::cli
