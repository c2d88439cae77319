#include "stratify/scenario.hpp"

#include "stratify/eisenstein.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stratify {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    fail(ErrorKind::parse_error, where + ": " + what);
}

std::string kind_name(const ScenarioValue& v) {
    switch (v.index()) {
        case 0: return "series";
        case 1: return "table";
        case 2: return "normal representation";
        case 3: return "strata";
        case 4: return "stratum items";
        default: return "integer";
    }
}

std::string even_str(const std::vector<long>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string table_str(const BettiTable& t) {
    bool odd_zero = true;
    for (long b : t.odd()) odd_zero = odd_zero && b == 0;
    if (odd_zero) return "even " + even_str(t.even());
    return "betti " + even_str(t.betti);
}

// Collects every "$name" string inside a JSON value.
void collect_refs(const json& j, std::vector<std::string>& out) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (!s.empty() && s[0] == '$') out.push_back(s.substr(1));
    } else if (j.is_array() || j.is_object()) {
        for (const auto& x : j) collect_refs(x, out);
    }
}

class Runner {
public:
    Runner(const json& doc, const ScenarioOptions& opts) : doc_(doc), opts_(opts) {}

    ScenarioReport run();

private:
    const json& doc_;
    const ScenarioOptions& opts_;
    ScenarioReport report_;
    std::map<std::string, ScenarioValue> values_;
    std::map<std::string, Fact> facts_;
    std::string where_;

    // ----- argument access -----
    const json& arg(const json& args, const std::string& key) const {
        if (!args.contains(key)) parse_fail(where_, "missing argument '" + key + "'");
        return args.at(key);
    }

    long integer(const json& j) const {
        if (j.is_string()) {
            const ScenarioValue& v = resolve(j);
            if (const auto* n = std::get_if<long>(&v)) return *n;
            if (const auto* r = std::get_if<NormalRepValue>(&v)) return r->tangent_normal.normal.dim();
            parse_fail(where_, "expected an integer, got a " + kind_name(v));
        }
        if (!j.is_number_integer()) parse_fail(where_, "expected an integer");
        return j.get<long>();
    }

    int integer_arg(const json& args, const std::string& key) const { return static_cast<int>(integer(arg(args, key))); }

    int order_arg(const json& args) const { return args.contains("order") ? integer_arg(args, "order") : report_.order; }

    Rational rational(const json& j) const {
        if (j.is_number_integer()) return Rational(j.get<long>());
        if (j.is_string()) {
            try {
                Rational q(j.get<std::string>());
                q.canonicalize();
                return q;
            } catch (const std::invalid_argument&) {
                parse_fail(where_, "bad rational '" + j.get<std::string>() + "'");
            }
        }
        parse_fail(where_, "expected a rational (integer or \"p/q\" string)");
    }

    RationalVector rational_vector(const json& j) const {
        if (!j.is_array()) parse_fail(where_, "expected an array of rationals");
        RationalVector v;
        for (const auto& x : j) v.push_back(rational(x));
        return v;
    }

    const ScenarioValue& resolve(const json& j) const {
        if (!j.is_string() || j.get<std::string>().empty() || j.get<std::string>()[0] != '$')
            parse_fail(where_, "expected a reference of the form \"$step\"");
        const std::string id = j.get<std::string>().substr(1);
        auto it = values_.find(id);
        if (it == values_.end()) parse_fail(where_, "unknown reference $" + id);
        return it->second;
    }

    TruncatedSeries series(const json& j, int order) const {
        if (j.is_array()) {
            std::vector<Rational> c;
            for (const auto& x : j) c.push_back(rational(x));
            c.resize(std::max<size_t>(c.size(), order + 1), Rational(0));
            for (size_t k = order + 1; k < c.size(); ++k)
                if (c[k] != 0) parse_fail(where_, "literal series has terms beyond the order");
            c.resize(order + 1);
            return TruncatedSeries(c, order);
        }
        if (j.is_number_integer() || (j.is_string() && j.get<std::string>()[0] != '$'))
            return TruncatedSeries::constant(rational(j), order);
        const ScenarioValue& v = resolve(j);
        if (const auto* s = std::get_if<TruncatedSeries>(&v)) return *s;
        if (const auto* t = std::get_if<BettiTable>(&v)) {
            // A table is a polynomial; extend it by zeros rather than truncating the scenario order.
            TruncatedSeries s(std::max(order, 2 * t->complex_dim));
            for (int k = 0; k <= 2 * t->complex_dim; ++k) s.set(k, t->betti[k]);
            return s;
        }
        parse_fail(where_, "expected a series, got a " + kind_name(v));
    }

    BettiTable table(const json& j) const {
        const ScenarioValue& v = resolve(j);
        if (const auto* t = std::get_if<BettiTable>(&v)) return *t;
        parse_fail(where_, "expected a Betti table, got a " + kind_name(v));
    }

    template <typename T>
    const T& typed(const json& j, const std::string& what) const {
        const ScenarioValue& v = resolve(j);
        if (const auto* x = std::get_if<T>(&v)) return *x;
        parse_fail(where_, "expected " + what + ", got a " + kind_name(v));
    }

    MultiPoly form(const json& args) const {
        return MultiPoly::parse(arg(args, "form").get<std::string>(), integer_arg(args, "vars"));
    }

    std::vector<std::vector<Rational>> matrix_rows(const json& j) const {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : j) rows.push_back(rational_vector(r));
        return rows;
    }

    // ----- steps -----
    ScenarioValue execute(const std::string& op, const json& args, StepResult& step);
    void check_expectation(const StepResult& step, const json& expect);
    void add_check(const std::string& name, bool pass, const std::string& detail) {
        report_.checks.push_back({name, pass, detail});
    }
    std::string summarize(const ScenarioValue& v) const;
};

std::string Runner::summarize(const ScenarioValue& v) const {
    if (const auto* s = std::get_if<TruncatedSeries>(&v)) return s->str();
    if (const auto* t = std::get_if<BettiTable>(&v)) return table_str(*t);
    if (const auto* r = std::get_if<NormalRepValue>(&v))
        return "tangent dim " + std::to_string(r->tangent_normal.tangent.size()) + ", normal dim " +
               std::to_string(r->tangent_normal.normal.dim());
    if (const auto* st = std::get_if<StrataValue>(&v)) {
        std::map<int, int> by_codim;
        for (const auto& b : st->strata)
            if (!b.is_zero()) ++by_codim[b.codim_expected];
        std::string s = std::to_string(st->strata.size()) + " elements";
        if (!by_codim.empty()) s += ", min nonzero codim " + std::to_string(by_codim.begin()->first);
        return s;
    }
    if (const auto* items = std::get_if<std::vector<StratumContribution>>(&v)) {
        std::string s = std::to_string(items->size()) + " items";
        for (const auto& it : *items) s += "; codim " + std::to_string(it.codim) + " w=" + std::to_string(it.weyl_share);
        return s;
    }
    return std::to_string(std::get<long>(v));
}

ScenarioValue Runner::execute(const std::string& op, const json& args, StepResult& step) {
    const int order = order_arg(args);

    if (op == "series") return series(arg(args, "coeffs"), order);
    if (op == "table") {
        const int dim = integer_arg(args, "dim");
        if (args.contains("even")) return BettiTable::from_even(dim, arg(args, "even").get<std::vector<long>>());
        BettiTable t;
        t.complex_dim = dim;
        t.betti = arg(args, "betti").get<std::vector<long>>();
        if (static_cast<int>(t.betti.size()) != 2 * dim + 1) parse_fail(where_, "betti list must have 2*dim+1 entries");
        return t;
    }
    if (op == "projective_space") {
        const int n = integer_arg(args, "dim");
        return BettiTable::from_even(n, std::vector<long>(n + 1, 1));
    }
    if (op == "gf_expand") {
        std::vector<std::pair<int, int>> f;
        for (const auto& p : arg(args, "factors")) f.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        return gf_expand(f, order);
    }
    if (op == "classifying_space") {
        // Built-in Poincare series of BG for tori and the classical groups.
        const std::string g = arg(args, "group").get<std::string>();
        const int n = integer_arg(args, "n");
        std::vector<std::pair<int, int>> f;
        if (g == "torus") {
            if (n > 0) f.emplace_back(2, n);
        } else if (g == "GL") {
            for (int i = 1; i <= n; ++i) f.emplace_back(2 * i, 1);
        } else if (g == "SL" || g == "PGL") {
            for (int i = 2; i <= n; ++i) f.emplace_back(2 * i, 1);
        } else {
            parse_fail(where_, "classifying_space group must be torus, GL, SL or PGL");
        }
        return gf_expand(f, order);
    }
    if (op == "central_quotient") {
        // H(BG) for G = G'/C*^r with G' a central extension: divide P(BG') by P(BC*)^r.
        TruncatedSeries s = series(arg(args, "of"), order);
        const int r = args.contains("rank") ? integer_arg(args, "rank") : 1;
        TruncatedSeries f = TruncatedSeries::from_ints({1, 0, -1}, s.order());
        for (int i = 0; i < r; ++i) s = s * f;
        return s;
    }
    if (op == "lincomb") {
        std::vector<LinTerm> terms;
        for (const auto& t : arg(args, "terms")) {
            LinTerm lt{t.contains("coef") ? rational(t.at("coef")) : Rational(1),
                       t.contains("shift") ? static_cast<int>(integer(t.at("shift"))) : 0, series(arg(t, "of"), order)};
            terms.push_back(std::move(lt));
        }
        if (terms.empty()) parse_fail(where_, "lincomb needs at least one term");
        TruncatedSeries s = lincomb(terms);
        return s.order() > order ? s.truncate(order) : s;
    }
    if (op == "product") {
        TruncatedSeries s = TruncatedSeries::constant(1, order);
        for (const auto& f : arg(args, "of")) {
            TruncatedSeries x = series(f, order);
            const int o = std::min(s.order(), x.order());
            s = s.truncate(o) * x.truncate(o);
        }
        return s;
    }
    if (op == "truncate") return series(arg(args, "of"), order).truncate(order);
    if (op == "duality_complete") return duality_complete(series(arg(args, "of"), order), integer_arg(args, "dim"));
    if (op == "kunneth") {
        BettiTable acc = BettiTable::from_even(0, {1});
        for (const auto& f : arg(args, "of")) acc = kunneth(acc, table(f));
        return acc;
    }
    if (op == "wreath") return wreath_symmetrize(table(arg(args, "of")), integer_arg(args, "copies"));
    if (op == "molien") {
        std::vector<RationalMatrix> gens;
        for (const auto& g : arg(args, "generators")) gens.push_back(RationalMatrix::from_rows(matrix_rows(g)));
        if (gens.empty()) parse_fail(where_, "molien needs generators");
        RationalGroup G = close_group(gens, default_group_cap, opts_.cache);
        step.note += (step.note.empty() ? "" : "; ") + std::string("group order ") + std::to_string(G.order());
        return molien(G, integer_arg(args, "degree"), order);
    }
    if (op == "strata") {
        const int n = integer_arg(args, "n");
        const int d = integer_arg(args, "d");
        const std::string g = args.value("group", "sl");
        if (g != "sl" && g != "torus") parse_fail(where_, "group must be 'sl' or 'torus'");
        auto strata = instability_index_set(hypersurface_weights(n, d),
                                            g == "sl" ? WeylGroupChoice::full_symmetric : WeylGroupChoice::trivial);
        return StrataValue{std::move(strata), n + 1};
    }
    if (op == "normal_rep") {
        const MultiPoly F = form(args);
        std::vector<RationalVector> cochars;
        for (const auto& c : arg(args, "cocharacters")) cochars.push_back(rational_vector(c));
        const auto tw = subtorus_projection_weights(cochars);
        std::vector<MultiPoly> extras;
        if (args.contains("extra_tangents"))
            for (const auto& e : args.at("extra_tangents")) extras.push_back(MultiPoly::parse(e.get<std::string>(), F.vars()));
        TangentNormal tn = normal_rep_of(F, tw, extras);
        // Tangent and normal weights together must exhaust the ambient weights.
        std::vector<RationalVector> all = tn.tangent;
        all.insert(all.end(), tn.normal.weights.begin(), tn.normal.weights.end());
        std::sort(all.begin(), all.end());
        const auto ambient = sym_weights(F.vars(), *F.degree(), tw);
        add_check(step.id + ": tangent + normal = ambient weights", all == ambient,
                  std::to_string(all.size()) + " vs " + std::to_string(ambient.size()) + " weights");
        return NormalRepValue{std::move(tn), std::move(cochars), F.vars()};
    }
    if (op == "df_relations") return static_cast<long>(df_relation_count(form(args)));
    if (op == "semi_invariant") {
        const MultiPoly F = form(args);
        SemiInvariance s = check_semiinvariant(F, matrix_rows(arg(args, "matrix")));
        if (!s.ok) fail(ErrorKind::check_failure, where_ + ": form is not semi-invariant: " + s.message);
        step.note += (step.note.empty() ? "" : "; ") + std::string("multiplier ") + s.lambda.get_str();
        return 1L;
    }
    if (op == "normal_strata") {
        const auto& rep = typed<NormalRepValue>(arg(args, "rep"), "a normal representation");
        const std::string g = args.value("group", "torus");
        if (g != "torus" && g != "pgl2") parse_fail(where_, "group must be 'torus' or 'pgl2'");
        auto strata = normal_rep_strata(rep.tangent_normal.normal, g == "torus" ? RepGroup::torus : RepGroup::pgl2);
        return StrataValue{std::move(strata), rep.coords};
    }
    if (op == "normal_rep_items") {
        const auto& st = typed<StrataValue>(arg(args, "strata"), "strata");
        std::map<int, TruncatedSeries> declared;
        for (const auto& [k, v] : arg(args, "series_by_codim").items()) declared.emplace(std::stoi(k), series(v, order));
        return normal_rep_items(
            st.strata, st.coords,
            [&](int codim) -> std::optional<TruncatedSeries> {
                auto it = declared.find(codim);
                if (it == declared.end()) return std::nullopt;
                return it->second;
            },
            order, step.fact);
    }
    if (op == "stratum_items") {
        const auto& st = typed<StrataValue>(arg(args, "strata"), "strata");
        const TruncatedSeries s = args.contains("series") ? series(args.at("series"), order) : TruncatedSeries::constant(1, order);
        std::vector<StratumContribution> items;
        for (const auto& b : st.strata) {
            if (b.is_zero() || 2 * b.codim_expected > order) continue;
            items.push_back({b.codim_expected, 1, s, step.fact});
        }
        return items;
    }
    if (op == "semistable_series") {
        std::vector<StratumContribution> strata;
        if (args.contains("strata"))
            strata = typed<std::vector<StratumContribution>>(args.at("strata"), "stratum items");
        return semistable_series(integer_arg(args, "ambient_dim"), arg(args, "exponents").get<std::vector<int>>(), strata,
                                 order);
    }
    if (op == "main_term") return main_term(series(arg(args, "p_n_z"), order), integer_arg(args, "normal_rank"), order);
    if (op == "extra_term")
        return extra_term(typed<std::vector<StratumContribution>>(arg(args, "items"), "stratum items"), order);
    if (op == "b_shift") {
        const int c = integer_arg(args, "normal_dim") - 1 - integer_arg(args, "group_dim");
        step.note += (step.note.empty() ? "" : "; ") + std::string("c = ") + std::to_string(c);
        return b_shift(table(arg(args, "table")), c, order);
    }
    if (op == "blowup_correction") return blowup_correction(table(arg(args, "exceptional")), integer_arg(args, "dim"));
    if (op == "boundary") {
        BoundarySpec spec;
        for (const auto& f : arg(args, "factors")) {
            BoundaryFactor bf;
            bf.label = f.value("label", "factor");
            bf.copies = f.value("copies", 1);
            const std::string group = arg(f, "group").get<std::string>();
            if (group == "weyl") {
                const EisLattice L = eis_lattice(arg(f, "lattice").get<std::string>());
                bf.group = weyl_group(L, default_group_cap, opts_.cache);
                bf.gram = L.gram;
            } else if (group == "unit_monomial") {
                bf.group = unit_monomial_group(static_cast<int>(integer(arg(f, "rank"))));
            } else {
                parse_fail(where_, "boundary group must be 'weyl' or 'unit_monomial'");
            }
            spec.factors.push_back(std::move(bf));
        }
        if (args.contains("trivial_symmetries"))
            for (const auto& s : args.at("trivial_symmetries"))
                spec.trivial_symmetries.push_back({arg(s, "name").get<std::string>(), s.value("citation", "")});
        BoundaryResult r = boundary_betti(spec);
        for (const auto& n : r.notes) step.note += (step.note.empty() ? "" : "; ") + n;
        return r.table;
    }
    parse_fail(where_, "unknown op '" + op + "'");
}

void Runner::check_expectation(const StepResult& step, const json& expect) {
    const std::string name = "expect " + step.id;
    auto record = [&](bool pass, const std::string& detail) { add_check(name, pass, detail); };
    const ScenarioValue& v = step.value;
    if (const auto* s = std::get_if<TruncatedSeries>(&v)) {
        const TruncatedSeries e = series(expect.at("coeffs"), s->order());
        record(e == *s, "expected " + e.str() + ", got " + s->str());
    } else if (const auto* t = std::get_if<BettiTable>(&v)) {
        if (expect.contains("even")) {
            auto e = expect.at("even").get<std::vector<long>>();
            const auto odd = t->odd();
            const bool odd_zero = std::all_of(odd.begin(), odd.end(), [](long b) { return b == 0; });
            record(odd_zero && e == t->even(), "expected even " + even_str(e) + ", got " + table_str(*t));
        } else {
            auto e = expect.at("betti").get<std::vector<long>>();
            record(e == t->betti, "expected betti " + even_str(e) + ", got " + table_str(*t));
        }
    } else if (const auto* r = std::get_if<NormalRepValue>(&v)) {
        bool pass = true;
        std::string detail;
        auto pairings = [&](const std::vector<RationalVector>& ws) {
            std::vector<RationalVector> out;
            for (const auto& w : ws) out.push_back(cocharacter_pairing(w, r->cocharacters));
            std::sort(out.begin(), out.end());
            return out;
        };
        auto expected_pairings = [&](const json& j) {
            std::vector<RationalVector> out;
            for (const auto& x : j) out.push_back(x.is_array() ? rational_vector(x) : RationalVector{rational(x)});
            std::sort(out.begin(), out.end());
            return out;
        };
        if (expect.contains("normal_dim")) {
            const long d = expect.at("normal_dim").get<long>();
            pass = pass && d == r->tangent_normal.normal.dim();
            detail += "normal dim " + std::to_string(r->tangent_normal.normal.dim()) + " (expected " + std::to_string(d) + ") ";
        }
        if (expect.contains("normal_weights")) {
            std::vector<RationalVector> e;
            for (const auto& x : expect.at("normal_weights")) e.push_back(rational_vector(x));
            std::sort(e.begin(), e.end());
            const bool ok = e == r->tangent_normal.normal.weights;
            pass = pass && ok;
            detail += ok ? "ambient normal weights match " : "ambient normal weights differ ";
        }
        if (expect.contains("normal_pairings")) {
            const bool ok = expected_pairings(expect.at("normal_pairings")) == pairings(r->tangent_normal.normal.weights);
            pass = pass && ok;
            detail += ok ? "normal weights match " : "normal weights differ ";
        }
        if (expect.contains("tangent_pairings")) {
            const bool ok = expected_pairings(expect.at("tangent_pairings")) == pairings(r->tangent_normal.tangent);
            pass = pass && ok;
            detail += ok ? "tangent weights match" : "tangent weights differ";
        }
        record(pass, detail);
    } else if (const auto* st = std::get_if<StrataValue>(&v)) {
        std::map<int, long> by_codim;
        for (const auto& b : st->strata)
            if (!b.is_zero()) ++by_codim[b.codim_expected];
        bool pass = true;
        std::string detail;
        if (expect.contains("min_codim")) {
            const int m = expect.at("min_codim").get<int>();
            const int got = by_codim.empty() ? -1 : by_codim.begin()->first;
            pass = pass && m == got;
            detail += "min codim " + std::to_string(got) + " (expected " + std::to_string(m) + ") ";
        }
        if (expect.contains("size")) {
            const size_t n = expect.at("size").get<size_t>();
            pass = pass && n == st->strata.size();
            detail += "size " + std::to_string(st->strata.size()) + " (expected " + std::to_string(n) + ") ";
        }
        if (expect.contains("count_by_codim"))
            for (const auto& [k, c] : expect.at("count_by_codim").items()) {
                const long got = by_codim[std::stoi(k)];
                pass = pass && got == c.get<long>();
                detail += "codim " + k + ": " + std::to_string(got) + " ";
            }
        record(pass, detail);
    } else if (const auto* items = std::get_if<std::vector<StratumContribution>>(&v)) {
        std::vector<int> shares;
        for (const auto& it : *items) shares.push_back(it.weyl_share);
        std::sort(shares.begin(), shares.end());
        auto e = expect.at("weyl_shares").get<std::vector<int>>();
        std::sort(e.begin(), e.end());
        std::vector<long> got(shares.begin(), shares.end());
        record(e == shares, "weyl shares " + even_str(got));
    } else {
        const long e = expect.at("value").get<long>();
        record(e == std::get<long>(v), "expected " + std::to_string(e) + ", got " + std::to_string(std::get<long>(v)));
    }
}

ScenarioReport Runner::run() {
    where_ = "scenario";
    if (!doc_.is_object()) parse_fail(where_, "top level must be an object");
    report_.name = arg(doc_, "name").get<std::string>();
    report_.title = doc_.value("title", report_.name);
    report_.order = integer_arg(doc_, "order");
    if (doc_.contains("notes")) report_.notes = doc_.at("notes").get<std::vector<std::string>>();

    if (doc_.contains("facts"))
        for (const auto& f : doc_.at("facts")) {
            Fact fact{arg(f, "id").get<std::string>(), f.value("statement", ""), f.value("citation", "")};
            if (fact.citation.empty()) fail(ErrorKind::check_failure, "declared fact '" + fact.id + "' has no citation");
            if (!facts_.emplace(fact.id, fact).second) parse_fail(where_, "duplicate fact '" + fact.id + "'");
            report_.facts.push_back(fact);
        }

    // Build the dependency graph and a topological order that keeps file order
    // among independent steps.
    const json& steps = arg(doc_, "steps");
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < steps.size(); ++i) {
        const std::string id = arg(steps[i], "id").get<std::string>();
        if (!index.emplace(id, i).second) parse_fail(where_, "duplicate step id '" + id + "'");
    }
    std::vector<std::set<size_t>> deps(steps.size());
    for (size_t i = 0; i < steps.size(); ++i) {
        std::vector<std::string> refs;
        if (steps[i].contains("args")) collect_refs(steps[i].at("args"), refs);
        for (const auto& r : refs) {
            auto it = index.find(r);
            if (it == index.end()) parse_fail("step " + steps[i].at("id").get<std::string>(), "unknown reference $" + r);
            deps[i].insert(it->second);
        }
    }
    std::vector<size_t> topo;
    std::vector<bool> done(steps.size(), false);
    while (topo.size() < steps.size()) {
        bool progressed = false;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (done[i]) continue;
            if (std::all_of(deps[i].begin(), deps[i].end(), [&](size_t d) { return done[d]; })) {
                done[i] = true;
                topo.push_back(i);
                progressed = true;
                break;
            }
        }
        if (!progressed) parse_fail(where_, "the step graph has a cycle");
    }

    static const std::set<std::string> declared_ops = {"series", "table", "normal_rep_items", "stratum_items"};
    std::vector<std::optional<StepResult>> results(steps.size());
    for (size_t i : topo) {
        const json& s = steps[i];
        StepResult step;
        step.id = s.at("id").get<std::string>();
        step.op = arg(s, "op").get<std::string>();
        step.note = s.value("note", "");
        step.fact = s.value("fact", "");
        where_ = "step " + step.id;
        if (!step.fact.empty() && !facts_.count(step.fact)) parse_fail(where_, "unknown fact '" + step.fact + "'");
        if (declared_ops.count(step.op) && step.fact.empty())
            fail(ErrorKind::check_failure, where_ + ": op '" + step.op + "' enters declared input and needs a fact");
        const json args = s.value("args", json::object());
        step.value = execute(step.op, args, step);
        step.summary = summarize(step.value);
        values_.emplace(step.id, step.value);
        if (s.contains("expect")) {
            step.has_expectation = true;
            check_expectation(step, s.at("expect"));
        }
        results[i] = std::move(step);
    }
    for (auto& r : results) report_.steps.push_back(std::move(*r));

    where_ = "outputs";
    if (doc_.contains("outputs"))
        for (const auto& o : doc_.at("outputs")) {
            OutputRow row;
            row.label = arg(o, "label").get<std::string>();
            row.latex_label = o.value("latex", row.label);
            const int dim = integer_arg(o, "dim");
            const ScenarioValue& v = resolve(arg(o, "of"));
            if (const auto* t = std::get_if<BettiTable>(&v)) row.table = *t;
            else row.table = duality_complete(series(o.at("of"), dim), dim);
            if (row.table.complex_dim != dim) parse_fail(where_, row.label + " has dimension " + std::to_string(row.table.complex_dim));
            row.duality = duality_check(row.table);
            if (o.contains("expect_even")) {
                row.expected_even = o.at("expect_even").get<std::vector<long>>();
                const auto odd = row.table.odd();
                row.matches = *row.expected_even == row.table.even() &&
                              std::all_of(odd.begin(), odd.end(), [](long b) { return b == 0; });
            }
            report_.outputs.push_back(std::move(row));
        }

    where_ = "checks";
    if (doc_.contains("checks"))
        for (const auto& c : doc_.at("checks")) {
            const std::string kind = arg(c, "kind").get<std::string>();
            const std::string name = c.value("name", kind);
            if (kind == "nonpositive" || kind == "nonnegative" || kind == "zero") {
                const TruncatedSeries s = series(arg(c, "of"), report_.order);
                bool pass = true;
                for (int k = 0; k <= s.order(); ++k)
                    pass = pass && (kind == "zero" ? s[k] == 0 : kind == "nonpositive" ? s[k] <= 0 : s[k] >= 0);
                add_check(name, pass, s.str());
            } else if (kind == "equal") {
                TruncatedSeries a = series(arg(c, "lhs"), report_.order);
                TruncatedSeries b = series(arg(c, "rhs"), report_.order);
                const int o = c.contains("order") ? integer_arg(c, "order") : std::min(a.order(), b.order());
                a = a.truncate(o);
                b = b.truncate(o);
                add_check(name, a == b, a.str() + (a == b ? " == " : " != ") + b.str());
            } else {
                parse_fail(where_, "unknown check kind '" + kind + "'");
            }
        }
    return report_;
}

}  // namespace

bool ScenarioReport::ok() const {
    for (const auto& o : outputs)
        if (!o.matches || !o.duality.pass || o.duality.negative_degree) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const StepResult& ScenarioReport::step(const std::string& id) const {
    for (const auto& s : steps)
        if (s.id == id) return s;
    fail(ErrorKind::invalid_argument, "no step '" + id + "' in scenario " + name);
}

const OutputRow& ScenarioReport::output(const std::string& label) const {
    for (const auto& o : outputs)
        if (o.label == label) return o;
    fail(ErrorKind::invalid_argument, "no output '" + label + "' in scenario " + name);
}

ScenarioReport run_scenario_text(const std::string& text, const ScenarioOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse_error, std::string("scenario is not valid JSON: ") + e.what());
    }
    try {
        return Runner(doc, opts).run();
    } catch (const json::exception& e) {
        fail(ErrorKind::parse_error, std::string("scenario schema error: ") + e.what());
    }
}

ScenarioReport run_scenario_file(const std::filesystem::path& file, const ScenarioOptions& opts) {
    std::ifstream in(file);
    if (!in) fail(ErrorKind::parse_error, "cannot read scenario file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str(), opts);
}

std::vector<std::string> builtin_scenarios() { return {"binary12", "cubic3fold", "cubiccurve", "cubicsurf"}; }

std::filesystem::path builtin_scenario_path(const std::string& name) {
    const char* env = std::getenv("STRATIFY_DATA");
    const std::filesystem::path root = env ? std::filesystem::path(env) : std::filesystem::path(STRATIFY_DATA_DIR);
    return root / "scenarios" / (name + ".json");
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
    const auto& names = builtin_scenarios();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_scenario_path(name_or_path);
    return name_or_path;
}

}  // namespace stratify
