#include "stratify/eisenstein.hpp"
#include "stratify/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace stratify;
using ojson = nlohmann::ordered_json;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::check_failure: return 2;
        case ErrorKind::parse_error: return 3;
        case ErrorKind::invalid_argument: return 3;
        case ErrorKind::resource_cap: return 4;
    }
    return 1;
}

std::string kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::check_failure: return "check_failure";
        case ErrorKind::parse_error: return "parse_error";
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::resource_cap: return "resource_cap";
    }
    return "internal";
}

void emit_error(const std::string& kind, const std::string& message) {
    std::cerr << ojson{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse_error, "cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse_error, path + ": " + e.what());
    }
}

Rational rational_of(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(ErrorKind::parse_error, "expected a rational");
    try {
        Rational q(j.get<std::string>());
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::parse_error, "bad rational " + j.get<std::string>());
    }
}

ojson rational_json(const Rational& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

ojson vector_json(const RationalVector& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

ojson series_json(const TruncatedSeries& s) {
    ojson c = ojson::array();
    for (const auto& x : s.coeffs()) c.push_back(rational_json(x));
    return ojson{{"order", s.order()}, {"coeffs", c}, {"text", s.str()}};
}

std::string table_text(const BettiTable& t) {
    std::string s = "dim " + std::to_string(t.complex_dim) + ": ";
    for (size_t j = 0; j < t.betti.size(); ++j) s += (j ? " " : "") + std::to_string(t.betti[j]);
    return s;
}

std::string render_table(const std::string& label, const BettiTable& t, OutputFormat f) {
    switch (f) {
        case OutputFormat::json:
            return ojson{{"label", label}, {"complex_dim", t.complex_dim}, {"betti", t.betti}}.dump(2) + "\n";
        case OutputFormat::latex: {
            OutputRow row;
            row.label = label;
            row.table = t;
            return latex_table({row});
        }
        case OutputFormat::csv: {
            std::string out = "label,degree,dimension\n";
            for (size_t j = 0; j < t.betti.size(); ++j)
                out += label + "," + std::to_string(j) + "," + std::to_string(t.betti[j]) + "\n";
            return out;
        }
        case OutputFormat::text: break;
    }
    return label + " " + table_text(t) + "\n";
}

// Lattice given by a built-in name or a JSON file
// {"type": "eisenstein", "gram": [[[a, b], ...], ...]} or {"type": "z", "gram": [[...]]}.
std::variant<EisLattice, ZLattice> load_lattice(const std::string& spec) {
    static const std::vector<std::string> eis = {"E1", "E2", "E3", "E4", "H"};
    if (std::find(eis.begin(), eis.end(), spec) != eis.end()) return eis_lattice(spec);
    if (spec.find('(') != std::string::npos || spec == "U") return z_lattice(spec);
    const auto j = read_json_file(spec);
    const std::string type = j.value("type", "z");
    const auto& g = j.at("gram");
    if (type == "eisenstein") {
        std::vector<std::vector<EisInt>> rows;
        for (const auto& r : g) {
            std::vector<EisInt> row;
            for (const auto& x : r) row.push_back(EisInt{x.at(0).get<std::int64_t>(), x.at(1).get<std::int64_t>()});
            rows.push_back(row);
        }
        return EisLattice{j.value("name", spec), EisMatrix::from_rows(rows)};
    }
    ZLattice L{j.value("name", spec), {}};
    for (const auto& r : g) {
        std::vector<Integer> row;
        for (const auto& x : r) row.emplace_back(x.get<long>());
        L.gram.push_back(row);
    }
    return L;
}

BettiTable parse_table_arg(const std::string& text) {
    std::vector<long> b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            b.push_back(std::stol(item));
        } catch (const std::exception&) {
            fail(ErrorKind::parse_error, "bad Betti number '" + item + "'");
        }
    }
    if (b.empty() || b.size() % 2 == 0)
        fail(ErrorKind::parse_error, "a Betti table lists b_0..b_2n (an odd number of entries)");
    BettiTable t;
    t.complex_dim = static_cast<int>(b.size() / 2);
    t.betti = b;
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Kirwan-method and Eisenstein-lattice computations for Betti tables of moduli spaces"};
    app.require_subcommand(1);

    std::string format_name = "text";
    std::optional<int> truncate;
    std::string cache_dir;
    app.add_option("--format", format_name, "text, json, csv or latex")->check(CLI::IsMember({"text", "json", "csv", "latex"}));
    app.add_option("--truncate", truncate, "show series only up to degree K");
    app.add_option("--cache-dir", cache_dir, "directory for cached group closures (default: $STRATIFY_CACHE)");

    auto* scenario = app.add_subcommand("scenario", "run or list scenarios");
    scenario->require_subcommand(1);
    auto* run = scenario->add_subcommand("run", "run a built-in scenario or a scenario file");
    std::string scenario_name;
    run->add_option("scenario", scenario_name, "built-in name or path")->required();
    auto* list = scenario->add_subcommand("list", "list built-in scenarios");

    auto* strata = app.add_subcommand("strata", "instability index set of degree-d hypersurfaces in P^n");
    int n = 0, d = 0;
    std::string group = "sl";
    strata->add_option("--n", n)->required();
    strata->add_option("--d", d)->required();
    strata->add_option("--group", group)->check(CLI::IsMember({"sl", "torus"}));

    auto* mol = app.add_subcommand("molien", "Molien series of a finite rational matrix group");
    std::string gens_file;
    int degree = 1;
    mol->add_option("--gens", gens_file, "JSON file: list of square matrices (entries integers or \"p/q\")")->required();
    mol->add_option("--degree", degree, "degree of the generators of the symmetric algebra");

    auto* lat = app.add_subcommand("lattice", "lattice computations");
    std::string lat_action, lat_name;
    lat->add_option("action", lat_action)->required()->check(CLI::IsMember({"roots", "weyl-order", "discriminant", "z-form"}));
    lat->add_option("lattice", lat_name, "E1..E4, H, A2(-1), D4(-1), E6(-1), E8(-1), U or a JSON file")->required();

    auto* bnd = app.add_subcommand("boundary", "Betti table of a toroidal boundary divisor");
    std::string boundary_file;
    bnd->add_option("spec", boundary_file, "JSON boundary specification")->required();

    auto* blow = app.add_subcommand("blowup", "decomposition-theorem correction for a point blowup");
    std::string exceptional;
    int blow_dim = 0;
    blow->add_option("--exceptional", exceptional, "Betti numbers b_0,...,b_2(n-1) of the exceptional divisor")->required();
    blow->add_option("--dim", blow_dim, "complex dimension of the blown-up space")->required();

    // Global flags may also follow the subcommand.
    for (auto* sub : {scenario, run, list, strata, mol, lat, bnd, blow}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("parse_error", e.what());
        return 3;
    }

    try {
        const OutputFormat format = parse_output_format(format_name);
        GroupCache cache = GroupCache::from_env();
        if (!cache_dir.empty()) cache.dir = cache_dir;

        if (list->parsed()) {
            for (const auto& s : builtin_scenarios()) std::cout << s << "\n";
            return 0;
        }
        if (run->parsed()) {
            ScenarioOptions opts;
            opts.cache = cache;
            ScenarioReport r = run_scenario_file(resolve_scenario(scenario_name), opts);
            std::cout << render_report(r, format, truncate);
            if (!r.ok()) {
                std::string failed;
                for (const auto& c : r.checks)
                    if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.name;
                for (const auto& o : r.outputs)
                    if (!o.matches || !o.duality.pass) failed += (failed.empty() ? "" : "; ") + o.label;
                emit_error("check_failure", "scenario " + r.name + " failed: " + failed);
                return 2;
            }
            return 0;
        }
        if (strata->parsed()) {
            const auto ws = hypersurface_weights(n, d);
            const auto B = instability_index_set(ws, group == "sl" ? WeylGroupChoice::full_symmetric : WeylGroupChoice::trivial);
            std::optional<int> min_codim;
            for (const auto& b : B)
                if (!b.is_zero() && (!min_codim || b.codim_expected < *min_codim)) min_codim = b.codim_expected;
            if (format == OutputFormat::json) {
                ojson items = ojson::array();
                for (const auto& b : B)
                    items.push_back({{"beta", vector_json(b.beta)}, {"norm2", rational_json(b.norm2)}, {"n", b.n_beta},
                                     {"r", b.r_beta}, {"dim_g_mod_p", b.dim_g_mod_p}, {"codim", b.codim_expected}});
                std::cout << ojson{{"n", n}, {"d", d}, {"group", group}, {"size", B.size()},
                                   {"min_nonzero_codim", min_codim ? ojson(*min_codim) : ojson()}, {"strata", items}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "degree " << d << " hypersurfaces in P^" << n << ", " << B.size() << " index-set elements\n";
                for (const auto& b : B)
                    std::cout << "  beta " << to_string(b.beta) << "  |beta|^2 " << b.norm2.get_str() << "  codim "
                              << b.codim_expected << "\n";
                if (min_codim) std::cout << "minimal nonzero codimension " << *min_codim << "\n";
            }
            return 0;
        }
        if (mol->parsed()) {
            const auto j = read_json_file(gens_file);
            std::vector<RationalMatrix> gens;
            for (const auto& m : j) {
                std::vector<std::vector<Rational>> rows;
                for (const auto& r : m) {
                    std::vector<Rational> row;
                    for (const auto& x : r) row.push_back(rational_of(x));
                    rows.push_back(row);
                }
                gens.push_back(RationalMatrix::from_rows(rows));
            }
            if (gens.empty()) fail(ErrorKind::parse_error, "no generators given");
            const RationalGroup G = close_group(gens, default_group_cap, cache);
            const TruncatedSeries s = molien(G, degree, truncate.value_or(20));
            if (format == OutputFormat::json)
                std::cout << ojson{{"group_order", G.order()}, {"series", series_json(s)}}.dump(2) << "\n";
            else
                std::cout << "group order " << G.order() << "\n" << s.str() << "\n";
            return 0;
        }
        if (lat->parsed()) {
            const auto L = load_lattice(lat_name);
            ojson out{{"lattice", lat_name}, {"action", lat_action}};
            std::string text;
            if (lat_action == "weyl-order") {
                if (!std::holds_alternative<EisLattice>(L))
                    fail(ErrorKind::invalid_argument, "weyl-order needs an Eisenstein lattice");
                const EisGroup W = weyl_group(std::get<EisLattice>(L), default_group_cap, cache);
                out["order"] = W.order();
                text = std::to_string(W.order());
            } else {
                const ZLattice Z = std::holds_alternative<EisLattice>(L) ? z_form(std::get<EisLattice>(L)) : std::get<ZLattice>(L);
                if (lat_action == "roots") {
                    const auto roots = enumerate_roots(Z);
                    out["count"] = roots.size();
                    text = std::to_string(roots.size());
                } else if (lat_action == "discriminant") {
                    const auto D = discriminant_form(Z);
                    ojson f = ojson::array(), q = ojson::array();
                    for (const auto& x : D.invariant_factors) f.push_back(x.get_si());
                    for (const auto& x : D.q_values) q.push_back(rational_json(x));
                    out["order"] = D.order().get_si();
                    out["invariant_factors"] = f;
                    out["q_values"] = q;
                    text = "order " + D.order().get_str() + ", factors";
                    for (const auto& x : D.invariant_factors) text += " " + x.get_str();
                    text += ", q values";
                    for (const auto& x : D.q_values) text += " " + x.get_str();
                } else {
                    ojson g = ojson::array();
                    for (const auto& r : Z.gram) {
                        ojson row = ojson::array();
                        for (const auto& x : r) row.push_back(x.get_si());
                        g.push_back(row);
                    }
                    out["gram"] = g;
                    out["determinant"] = z_determinant(Z).get_str();
                    out["even"] = is_even(Z);
                    text = "rank " + std::to_string(Z.rank()) + ", determinant " + z_determinant(Z).get_str() +
                           (is_even(Z) ? ", even" : ", odd");
                    for (const auto& r : Z.gram) {
                        text += "\n ";
                        for (const auto& x : r) text += " " + x.get_str();
                    }
                }
            }
            if (format == OutputFormat::json) std::cout << out.dump(2) << "\n";
            else std::cout << text << "\n";
            return 0;
        }
        if (bnd->parsed()) {
            const auto j = read_json_file(boundary_file);
            BoundarySpec spec;
            for (const auto& f : j.at("factors")) {
                BoundaryFactor bf;
                bf.label = f.value("label", "factor");
                bf.copies = f.value("copies", 1);
                const std::string g = f.at("group").get<std::string>();
                if (g == "weyl") {
                    const EisLattice L = eis_lattice(f.at("lattice").get<std::string>());
                    bf.group = weyl_group(L, default_group_cap, cache);
                    bf.gram = L.gram;
                } else if (g == "unit_monomial") {
                    bf.group = unit_monomial_group(f.at("rank").get<int>());
                } else {
                    fail(ErrorKind::parse_error, "boundary group must be 'weyl' or 'unit_monomial'");
                }
                spec.factors.push_back(std::move(bf));
            }
            if (j.contains("trivial_symmetries"))
                for (const auto& s : j.at("trivial_symmetries"))
                    spec.trivial_symmetries.push_back({s.at("name").get<std::string>(), s.value("citation", "")});
            const BoundaryResult r = boundary_betti(spec);
            std::cout << render_table(j.value("label", "T"), r.table, format);
            if (format == OutputFormat::text)
                for (const auto& note : r.notes) std::cout << "  " << note << "\n";
            return 0;
        }
        if (blow->parsed()) {
            const TruncatedSeries s = blowup_correction(parse_table_arg(exceptional), blow_dim);
            const TruncatedSeries shown = truncate ? s.truncate(std::min(*truncate, s.order())) : s;
            if (format == OutputFormat::json) std::cout << series_json(shown).dump(2) << "\n";
            else std::cout << shown.str() << "\n";
            return 0;
        }
    } catch (const Error& e) {
        emit_error(kind_name(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
    return 0;
}
