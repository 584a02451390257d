#include "loopgrowth/cli.hpp"

#include "loopgrowth/error.hpp"
#include "loopgrowth/freeloop.hpp"
#include "loopgrowth/loop.hpp"
#include "loopgrowth/series.hpp"
#include "loopgrowth/space.hpp"
#include "loopgrowth/torsion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loopgrowth::cli {

namespace {

using json = nlohmann::ordered_json;

// ---- serialization helpers --------------------------------------------------

json integer_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

json integers_json(const std::vector<Integer>& xs, std::size_t from = 0)
{
    json a = json::array();
    for (std::size_t i = from; i < xs.size(); ++i)
        a.push_back(integer_json(xs[i]));
    return a;
}

// Truncated (toward zero) decimal expansion with a fixed number of digits.
std::string decimal_string(const Rational& q, unsigned digits = 20)
{
    Integer num = abs(q.get_num());
    const Integer& den = q.get_den();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Integer scaled = (num * scale) / den;
    Integer whole = scaled / scale;
    Integer frac = scaled % scale;
    std::string f = frac.get_str();
    f.insert(0, digits - f.size(), '0');
    std::string s = (q < 0 ? "-" : "") + whole.get_str();
    if (digits > 0)
        s += "." + f;
    return s;
}

json rational_json(const Rational& q)
{
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"decimal", decimal_string(q)}};
}

json polynomial_json(const IntPolynomial& p)
{
    json a = json::array();
    for (const Integer& c : p.coeffs())
        a.push_back(integer_json(c));
    return a;
}

json gf_json(const RationalGF& gf)
{
    return json{{"numerator", polynomial_json(gf.num())},
                {"denominator", polynomial_json(gf.den())},
                {"text", gf.to_string()}};
}

json series_json(const TruncatedSeries& s)
{
    json a = json::array();
    for (const Rational& c : s.coeffs())
        a.push_back(c.get_den() == 1 ? integer_json(c.get_num()) : rational_json(c));
    return a;
}

json radius_json(const Radius& r)
{
    json j;
    j["infinite"] = r.is_infinite();
    j["eventually_zero"] = r.eventually_zero();
    j["nonnegative_expansion"] = r.nonnegative_expansion();
    if (r.is_infinite()) {
        j["lo"] = nullptr;
        j["hi"] = nullptr;
        j["width"] = nullptr;
        j["defining_polynomial"] = nullptr;
    } else {
        j["lo"] = rational_json(r.lo());
        j["hi"] = rational_json(r.hi());
        j["width"] = rational_json(r.width());
        j["defining_polynomial"] = polynomial_json(r.defining_polynomial());
    }
    return j;
}

json log_index_json(const LogIndex& li)
{
    return json{{"value", li.value},
                {"error", li.error},
                {"rho_infinite", li.rho_infinite},
                {"eventually_zero", li.eventually_zero}};
}

json growth_json(const GrowthCheckResult& g)
{
    json seq = json::array();
    for (std::size_t i = 0; i < g.sequence.size(); ++i)
        seq.push_back(json{{"degree", g.sequence[i]}, {"alpha", g.alphas[i]}});
    return json{{"passed", g.passed},
                {"target", g.target},
                {"lambda", g.params.lambda},
                {"epsilon", g.params.epsilon},
                {"k_min", g.params.k_min},
                {"trunc_degree", g.trunc_degree},
                {"sequence", seq},
                {"failure", g.failure.empty() ? json(nullptr) : json(g.failure)}};
}

json profile_json(const SpaceProfile& p)
{
    return json{{"connectivity", p.connectivity},
                {"dimension", p.dimension},
                {"rationally_nontrivial", p.rationally_nontrivial}};
}

json primes_json(const PrimeSet& s)
{
    json a = json::array();
    for (int p : s.primes)
        a.push_back(p);
    return a;
}

std::string primes_cell(const PrimeSet& s)
{
    std::string out;
    for (int p : s.primes) {
        if (!out.empty())
            out += ";";
        out += std::to_string(p);
    }
    return out;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::string str(const Integer& x) { return x.get_str(); }

std::string str(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string str(bool b) { return b ? "true" : "false"; }

// ---- report -----------------------------------------------------------------

struct Report {
    json request = json::object();
    json results = json::object();
    json provenance = json::array();
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(const std::string& claim, const char* source, const std::string& basis)
    {
        provenance.push_back(json{{"claim", claim}, {"source", source}, {"basis", basis}});
    }
    void cited(const std::string& claim, const std::string& theorem) { add(claim, "THEOREM_CITED", theorem); }
    void computed(const std::string& claim, const std::string& how) { add(claim, "COMPUTED", how); }
    void model(const std::string& claim, const std::string& model) { add(claim, "MODEL", model); }

    void table(std::vector<std::string> cols) { columns = std::move(cols); }
    void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

json engine_json() { return json{{"name", "loopgrowth"}, {"version", kEngineVersion}}; }

void emit_json(std::ostream& out, const Report& r, const json& error)
{
    json doc;
    doc["schema"] = kSchemaId;
    doc["engine"] = engine_json();
    doc["request"] = r.request;
    doc["results"] = r.results;
    doc["provenance"] = r.provenance;
    doc["error"] = error;
    out << doc.dump(2) << '\n';
}

void emit_csv(std::ostream& out, const Report& r)
{
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << csv_cell(r.columns[i]);
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

void emit_csv_error(std::ostream& out, const json& error)
{
    out << "kind,message,offset\n";
    out << csv_cell(error["kind"].get<std::string>()) << ',' << csv_cell(error["message"].get<std::string>()) << ','
        << (error["offset"].is_null() ? std::string() : std::to_string(error["offset"].get<std::size_t>())) << '\n';
}

json error_json(const char* kind, const std::string& message, std::optional<std::size_t> offset = std::nullopt,
                const std::vector<std::string>& expected = {})
{
    json e;
    e["kind"] = kind;
    e["message"] = message;
    e["offset"] = offset ? json(*offset) : json(nullptr);
    e["expected"] = expected;
    return e;
}

// ---- options ----------------------------------------------------------------

struct Globals {
    std::size_t max_degree = 40;
    std::string format = "json";
    double lambda = 1.5;
    double epsilon = 0.1;
    std::size_t k_min = 10;
    int threads = 0;

    GrowthParams params() const { return GrowthParams{lambda, epsilon, k_min}; }
};

struct Options {
    std::string space;
    std::string a, z, m_space, n_space, j;
    std::string inert;
    std::string presentation;
    int m = 0, n = 0, p = 0, r = 0, d = 0, s = 0;
    std::string method = "necklace";
    std::vector<int> alphabet;
    bool table_only = false;
};

void require_series_degree(const Globals& g)
{
    if (g.max_degree > kSeriesDegreeLimit)
        throw validation_error("max degree exceeds the series guard of " + std::to_string(kSeriesDegreeLimit));
}

// Space expression with its canonical form echoed in the request.
SpaceExpr space_arg(Report& rep, const std::string& key, const std::string& text)
{
    SpaceExpr x = parse(text);
    rep.request["arguments"][key] = to_string(x);
    return x;
}

json load_presentation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot read presentation file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        json p = json::parse(buf.str());
        if (!p.is_object())
            throw ParseError("presentation must be a JSON object", 0, {"{"});
        return p;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed presentation file: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
}

std::string field(const json& p, const char* key)
{
    if (!p.contains(key))
        return {};
    if (!p[key].is_string())
        throw validation_error(std::string("presentation field ") + key + " must be a string");
    return p[key].get<std::string>();
}

int int_field(const json& p, const char* key, int fallback)
{
    if (!p.contains(key))
        return fallback;
    if (!p[key].is_number_integer())
        throw validation_error(std::string("presentation field ") + key + " must be an integer");
    return p[key].get<int>();
}

// Merges --presentation into the flag values; flags win.
void apply_presentation(Options& o, const char* kind)
{
    if (o.presentation.empty())
        return;
    json p = load_presentation(o.presentation);
    const std::string declared = field(p, "kind");
    if (!declared.empty() && declared != kind)
        throw validation_error("presentation kind '" + declared + "' does not match command '" + kind + "'");
    auto fill = [](std::string& dst, const std::string& v) {
        if (dst.empty())
            dst = v;
    };
    fill(o.a, field(p, "A"));
    fill(o.z, field(p, "Z"));
    fill(o.m_space, field(p, "M"));
    fill(o.n_space, field(p, "N"));
    fill(o.j, field(p, "J"));
    fill(o.inert, field(p, "inert_justification"));
    if (std::string(kind) == "yclass") {
        fill(o.j, field(p, "A"));
        if (o.m == 0)
            o.m = int_field(p, "m", 0);
        if (o.n == 0)
            o.n = int_field(p, "n", 0);
    }
}

std::string require(const std::string& v, const char* flag)
{
    if (v.empty())
        throw validation_error(std::string("missing required input ") + flag);
    return v;
}

std::string require_inert(const Options& o)
{
    if (o.inert.empty())
        throw hypothesis_error("inertness must be asserted: supply --inert with a justification");
    return o.inert;
}

// ---- commands ---------------------------------------------------------------

void cmd_parse(const Globals&, const Options& o, Report& rep)
{
    SpaceExpr x = space_arg(rep, "space", o.space);
    rep.results["canonical"] = to_string(x);
    rep.results["profile"] = profile_json(profile(x));
    rep.results["rational_suspension"] = is_rational_suspension(x);
    rep.computed("canonical form", "parser and canonical printer");
    rep.table({"canonical", "connectivity", "dimension", "rationally_nontrivial"});
    SpaceProfile pr = profile(x);
    rep.row({to_string(x), std::to_string(pr.connectivity), std::to_string(pr.dimension),
             str(pr.rationally_nontrivial)});
}

void cmd_homology(const Globals&, const Options& o, Report& rep)
{
    SpaceExpr x = space_arg(rep, "space", o.space);
    RationalGF h = homology_gf(x);
    IntPolynomial red = reduced_homology(x);
    rep.results["canonical"] = to_string(x);
    rep.results["homology"] = polynomial_json(h.num());
    rep.results["reduced_homology"] = polynomial_json(red);
    rep.results["profile"] = profile_json(profile(x));
    rep.computed("rational homology Hilbert series", "Kunneth and wedge rules on the expression tree");
    rep.table({"degree", "dim", "reduced_dim"});
    for (int k = 0; k <= h.num().degree(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        rep.row({std::to_string(k), str(h.num()[i]), str(k <= red.degree() ? red[i] : Integer(0))});
    }
}

void cite_loop_series(Report& rep, const SpaceExpr& x)
{
    if (is_rational_suspension(x))
        rep.cited("loop homology series of a suspension", "Bott-Samelson theorem: H(Omega Sigma B) = T(H(B))");
    else
        rep.cited("loop homology series", "Bott-Samelson theorem, Kunneth theorem and the free product identity");
}

void cmd_loop_series(const Globals& g, const Options& o, Report& rep)
{
    require_series_degree(g);
    SpaceExpr x = space_arg(rep, "space", o.space);
    RationalGF gf = loop_gf(x);
    TruncatedSeries s = expand(gf, g.max_degree);
    Radius rho = smallest_positive_pole(gf);
    PiRankTable pi = pi_ranks(gf, g.max_degree);
    rep.results["canonical"] = to_string(x);
    rep.results["loop_series"] = gf_json(gf);
    rep.results["coefficients"] = series_json(s);
    rep.results["rho"] = radius_json(rho);
    rep.results["pi_ranks"] = integers_json(pi.ranks, 1);
    cite_loop_series(rep, x);
    rep.computed("coefficients", "exact power-series expansion");
    rep.computed("rho", "Sturm isolation of the smallest positive pole");
    rep.computed("pi_ranks", "graded PBW inversion of the loop series");
    rep.table({"degree", "loop_dim", "pi_rank"});
    for (std::size_t k = 0; k <= g.max_degree; ++k)
        rep.row({std::to_string(k), s[k].get_str(), k == 0 ? std::string() : str(pi.ranks[k])});
}

void radius_row(Report& rep, const Radius& r)
{
    rep.table({"infinite", "lo_num", "lo_den", "hi_num", "hi_den", "lo_decimal", "hi_decimal"});
    if (r.is_infinite())
        rep.row({"true", "", "", "", "", "", ""});
    else
        rep.row({"false", r.lo().get_num().get_str(), r.lo().get_den().get_str(), r.hi().get_num().get_str(),
                 r.hi().get_den().get_str(), decimal_string(r.lo()), decimal_string(r.hi())});
}

void cmd_rho(const Globals&, const Options& o, Report& rep)
{
    SpaceExpr x = space_arg(rep, "space", o.space);
    RationalGF gf = loop_gf(x);
    Radius rho = smallest_positive_pole(gf);
    rep.results["canonical"] = to_string(x);
    rep.results["loop_series"] = gf_json(gf);
    rep.results["rho"] = radius_json(rho);
    rep.results["elliptic"] = elliptic_proxy(rho);
    cite_loop_series(rep, x);
    rep.computed("rho", "Sturm isolation of the smallest positive pole");
    rep.model("elliptic", "proxy: loop homology grows subexponentially iff rho >= 1");
    radius_row(rep, rho);
}

void cmd_log_index(const Globals& g, const Options& o, Report& rep)
{
    require_series_degree(g);
    SpaceExpr x = space_arg(rep, "space", o.space);
    RationalGF gf = loop_gf(x);
    Radius rho = smallest_positive_pole(gf);
    LogIndex li = log_index_exact(rho);
    TruncatedSeries s = expand(gf, g.max_degree);
    GrowthCheckResult check = controlled_growth_check(s, li.value, g.params());
    rep.results["canonical"] = to_string(x);
    rep.results["rho"] = radius_json(rho);
    rep.results["log_index"] = log_index_json(li);
    rep.results["empirical"] = log_index_empirical(s, g.max_degree / 2);
    rep.results["growth_check"] = growth_json(check);
    cite_loop_series(rep, x);
    rep.computed("log_index", "-ln(rho) from the certified pole interval");
    rep.computed("empirical", "max of ln(c_i)/i over the upper half of the truncation");
    rep.computed("growth_check", "controlled exponential growth test on the loop series");
    rep.table({"degree", "alpha"});
    for (std::size_t i = 0; i < check.sequence.size(); ++i)
        rep.row({std::to_string(check.sequence[i]), str(check.alphas[i])});
}

void verdict_results(const Globals& g, Report& rep, const RationalGF& loop_y, const RationalGF& loop_z,
                     const GrowthVerdict& v, const std::string& theorem)
{
    require_series_degree(g);
    TruncatedSeries sy = expand(loop_y, g.max_degree);
    TruncatedSeries sz = expand(loop_z, g.max_degree);
    rep.results["loop_series"] = gf_json(loop_y);
    rep.results["coefficients"] = series_json(sy);
    rep.results["rho"] = radius_json(v.rho);
    rep.results["rho_loop_z"] = radius_json(v.rho_loop_z);
    rep.results["log_index"] = log_index_json(v.log_index);
    rep.results["elliptic"] = v.elliptic;
    rep.results["strongly_inert"] = v.strongly_inert ? json(*v.strongly_inert) : json(nullptr);
    rep.results["omega_at_rho_infinite"] = v.omega_at_rho_infinite ? json(*v.omega_at_rho_infinite) : json(nullptr);
    rep.results["verdict"] = to_string(v.good_growth);
    rep.results["trail"] = v.trail;
    rep.cited("loop series of Y", "inert cofibration theorem: OmegaY = OmegaZ / (1 - redA * OmegaZ)");
    rep.computed("rho and rho_loop_z", "Sturm isolation, refined until the intervals are disjoint");
    rep.computed("log_index", "-ln(rho) from the certified pole interval");
    switch (v.good_growth) {
    case GoodGrowth::StronglyInert:
        rep.cited("verdict: good exponential growth of the free loop space (certified by theorem, not recomputed)",
                  theorem.empty() ? "strongly inert cofibration theorem" : theorem);
        break;
    case GoodGrowth::InertPoleDivergence:
        rep.cited("verdict: good exponential growth of the free loop space (certified by theorem, not recomputed)",
                  theorem.empty() ? "inert cofibration theorem with divergent OmegaZ at its radius" : theorem);
        break;
    case GoodGrowth::NotCertified:
        rep.computed("verdict: no sufficient criterion applies", "strongly inert and pole-divergence tests");
        break;
    }
    rep.table({"degree", "loop_y_dim", "loop_z_dim"});
    for (std::size_t k = 0; k <= g.max_degree; ++k)
        rep.row({std::to_string(k), sy[k].get_str(), sz[k].get_str()});
}

void cmd_cofiber(const Globals& g, Options o, Report& rep)
{
    apply_presentation(o, "cofiber");
    CofiberPresentation c{space_arg(rep, "A", require(o.a, "--A")), space_arg(rep, "Z", require(o.z, "--Z")), true,
                          require_inert(o)};
    rep.request["arguments"]["inert"] = c.justification;
    GrowthVerdict v = good_growth_verdict(c);
    rep.add("attaching map is inert", "THEOREM_CITED", "asserted by the user: " + c.justification);
    verdict_results(g, rep, inert_cofiber_loop_gf(c), loop_gf(c.quotient), v, "");
}

void cmd_connsum(const Globals& g, Options o, Report& rep)
{
    apply_presentation(o, "connsum");
    ConnSumPresentation c{space_arg(rep, "A", require(o.a, "--A")), space_arg(rep, "M", require(o.m_space, "--M")),
                          space_arg(rep, "N", require(o.n_space, "--N")), true, require_inert(o)};
    rep.request["arguments"]["inert"] = c.justification;
    GrowthVerdict v = connected_sum_verdict(c);
    CofiberPresentation collar = collar_cofibration(c);
    rep.add("attaching maps are inert", "THEOREM_CITED", "asserted by the user: " + c.justification);
    rep.cited("collar cofibration Sigma A -> M # N -> M v N", "general connected sum construction");
    verdict_results(g, rep, connected_sum_loop_gf(c), loop_gf(collar.quotient), v,
                    v.good_growth == GoodGrowth::NotCertified ? "" : "connected sum good growth theorem");
}

void cmd_yclass(const Globals& g, Options o, Report& rep)
{
    apply_presentation(o, "yclass");
    YClassPresentation y{o.m, o.n, space_arg(rep, "J", require(o.j, "--J")), require_inert(o)};
    rep.request["arguments"]["m"] = y.m;
    rep.request["arguments"]["n"] = y.n;
    rep.request["arguments"]["inert"] = y.justification;
    CofiberPresentation c = defining_cofibration(y);
    GrowthVerdict v = y_class_verdict(y);
    rep.results["m"] = y.m;
    rep.results["n"] = y.n;
    rep.add("membership in the class: cofibration Sigma J -> Y -> S^m x S^(n-m) is inert", "THEOREM_CITED",
            "asserted by the user: " + y.justification);
    verdict_results(g, rep, y_class_loop_gf(y), loop_gf(c.quotient), v,
                    v.good_growth == GoodGrowth::NotCertified ? "" : "good growth theorem for the class of Y");
}

void table_json(Report& rep, const HHDimTable& t)
{
    rep.results["table"] = json{{"hh0", integers_json(t.hh0)},
                                {"hh1", integers_json(t.hh1)},
                                {"lx", integers_json(t.lx)},
                                {"tensor_dims", integers_json(t.tensor_dims)},
                                {"tensor_v_dims", integers_json(t.tensor_v_dims)},
                                {"trunc_degree", t.trunc_degree}};
    rep.results["rank_nullity"] = t.rank_nullity_holds();
    rep.table({"degree", "hh0", "hh1", "lx", "tensor_dim", "tensor_v_dim"});
    for (std::size_t k = 0; k <= t.trunc_degree; ++k)
        rep.row({std::to_string(k), str(t.hh0[k]), str(t.hh1[k]), str(t.lx[k]), str(t.tensor_dims[k]),
                 str(t.tensor_v_dims[k])});
}

void cmd_free_loop(const Globals& g, const Options& o, Report& rep)
{
    require_series_degree(g);
    std::optional<GradedAlphabet> alphabet;
    if (!o.space.empty()) {
        alphabet = alphabet_from_space(space_arg(rep, "space", o.space));
    } else if (!o.alphabet.empty()) {
        alphabet.emplace(o.alphabet);
        rep.request["arguments"]["alphabet"] = alphabet->degrees;
    } else {
        throw validation_error("missing required input: a wedge of spheres or --alphabet");
    }
    rep.request["arguments"]["method"] = o.method;
    rep.request["arguments"]["table_only"] = o.table_only;
    const std::size_t N = g.max_degree;
    rep.results["alphabet"] = alphabet->degrees;
    rep.results["method"] = o.method;
    rep.model("H(LX) = HH(H(OmegaX))", "assumed: formality of loop chains, valid for wedges of spheres");

    HHDimTable table;
    if (o.method == "necklace") {
        table = hh_necklace(*alphabet, N);
        rep.computed("table", "signed cyclic-word counting with rank-nullity");
    } else {
        if (N > kBruteForceDegreeLimit)
            throw validation_error("max degree exceeds the brute-force guard of "
                                   + std::to_string(kBruteForceDegreeLimit));
        table = hh_bruteforce(*alphabet, N);
        rep.computed("table", "exact rank of the Hochschild boundary on the word basis");
        if (o.method == "both") {
            const bool agree = table == hh_necklace(*alphabet, N);
            rep.results["paths_agree"] = agree;
            rep.computed("paths_agree", "entrywise comparison with signed cyclic-word counting");
            if (!agree)
                throw validation_error("internal error: brute force and counting paths disagree");
        }
    }
    table_json(rep, table);
    rep.computed("rank_nullity", "hh0 - hh1 = dim A - dim (A (x) V) in every degree");

    if (o.table_only) {
        rep.results["growth"] = nullptr;
        return;
    }
    if (alphabet->size() < 2) {
        rep.results["growth"] = nullptr;
        throw hypothesis_error("wedge is rationally elliptic; free-loop growth hypothesis fails");
    }
    if (N < g.k_min) {
        rep.results["growth"] = nullptr;
        throw validation_error("truncation degree must be at least k_min for the growth claim");
    }
    FreeLoopGrowth fl = free_loop_good_growth(*alphabet, N, g.params());
    rep.results["growth"] = json{{"check", growth_json(fl.check)},
                                 {"loop_log_index", log_index_json(fl.loop_log_index)},
                                 {"empirical", fl.empirical},
                                 {"tolerance", fl.tolerance},
                                 {"log_index_match", fl.log_index_match}};
    rep.cited("free loop space of a hyperbolic wedge of spheres has good exponential growth",
              "good growth theorem for free loop spaces of wedges of spheres");
    rep.computed("growth.check", "controlled exponential growth test on lx");
    rep.computed("growth.log_index_match", "empirical log index of lx against -ln(rho) of the loop series");
}

void cmd_hm_census(const Globals& g, const Options& o, Report& rep)
{
    require_series_degree(g);
    rep.request["arguments"]["m"] = o.m;
    rep.request["arguments"]["n"] = o.n;
    HiltonMilnorCensus c = hilton_milnor_census(o.m, o.n, g.max_degree);
    json factors = json::array();
    for (const auto& [dim, mult] : c.factors)
        factors.push_back(json{{"dimension", dim}, {"multiplicity", integer_json(mult)}});
    rep.results["m"] = c.m;
    rep.results["n"] = c.n;
    rep.results["generator_degrees"] = json::array({c.m - 1, c.n - 1});
    rep.results["factors"] = factors;
    rep.results["lie_ranks"] = integers_json(c.lie_ranks, 1);
    rep.results["graded_ranks"] = integers_json(c.graded_ranks, 1);
    rep.results["reconstructs"] = c.reconstructs();
    const std::size_t lightest = static_cast<std::size_t>(std::min(c.m, c.n) - 1);
    if (g.max_degree / lightest <= static_cast<std::size_t>(kLyndonMaxLength)) {
        std::vector<Integer> counts = lyndon_degree_counts(c.m, c.n, g.max_degree);
        counts[0] = 0;
        std::vector<Integer> ranks = c.lie_ranks;
        ranks[0] = 0;
        rep.results["lyndon_counts"] = integers_json(counts, 1);
        rep.results["lyndon_agrees"] = counts == ranks;
        rep.computed("lyndon_counts", "enumeration of Lyndon words by weight degree");
    } else {
        rep.results["lyndon_counts"] = nullptr;
        rep.results["lyndon_agrees"] = nullptr;
    }
    rep.cited("Omega(S^m v S^n) is a product of loops on spheres, one per basic product", "Hilton-Milnor theorem");
    rep.computed("factors", "ungraded PBW inversion of 1/(1 - z^(m-1) - z^(n-1))");
    rep.computed("graded_ranks", "graded PBW inversion (rational homotopy ranks)");
    rep.table({"dimension", "multiplicity"});
    for (const auto& [dim, mult] : c.factors)
        rep.row({std::to_string(dim), str(mult)});
}

void cmd_torsion(const Globals& g, const Options& o, Report& rep)
{
    require_series_degree(g);
    rep.request["arguments"]["m"] = o.m;
    rep.request["arguments"]["n"] = o.n;
    rep.request["arguments"]["p"] = o.p;
    rep.request["arguments"]["r"] = o.r;
    TorsionReport t = torsion_report(o.m, o.n, o.p, o.r, g.max_degree);
    rep.results["prime"] = t.prime;
    rep.results["r"] = t.r;
    rep.results["excluded"] = primes_json(t.excluded);
    rep.results["prime_excluded"] = t.prime_excluded;
    rep.results["exponent_witness"] = t.exponent_witness;
    rep.results["witness_statement"] = "a factor OmegaS^" + std::to_string(t.exponent_witness)
                                       + " whose exponent exceeds p^r exists by dimension "
                                       + std::to_string(t.exponent_witness);
    rep.results["t_lower"] = integers_json(t.t_lower);
    rep.results["model_id"] = t.model_id;
    rep.results["factor_counts"] = integers_json(t.factor_counts, 1);
    rep.results["census_log_index"] = t.census_log_index;
    rep.results["wedge_log_index"] = t.wedge_log_index;
    rep.cited("exponent witness", "Hilton-Milnor theorem; sphere exponents increase with dimension");
    rep.cited("excluded primes", "p-local splitting lemma for suspensions");
    rep.model("t_lower", std::string(t.model_id)
                             + ": each OmegaS^(2k+1) factor with k >= r adds one summand at its first p-torsion "
                               "degree n + 2p - 3");
    rep.computed("census_log_index", "max of ln(c_i)/i over the upper half of the census");
    rep.computed("wedge_log_index", "-ln(rho) of 1/(1 - z^(m-1) - z^(n-1))");
    if (t.prime_excluded)
        rep.computed("prime_excluded", "p lies in the excluded set; the no-exponent conclusion is not covered");
    rep.table({"degree", "t_lower"});
    for (std::size_t k = 0; k < t.t_lower.size(); ++k)
        rep.row({std::to_string(k), str(t.t_lower[k])});
}

void cmd_primes(const Globals&, const Options& o, Report& rep)
{
    PrimeSet ps;
    if (!o.space.empty()) {
        SpaceExpr x = space_arg(rep, "space", o.space);
        SpaceProfile pr = profile(x);
        rep.results["d"] = pr.dimension;
        rep.results["s"] = pr.connectivity;
        ps = primes_set(x);
    } else {
        rep.request["arguments"]["d"] = o.d;
        rep.request["arguments"]["s"] = o.s;
        rep.results["d"] = o.d;
        rep.results["s"] = o.s;
        ps = primes_set(o.d, o.s);
    }
    rep.results["primes"] = primes_json(ps);
    rep.cited("primes q <= (d - s + 1)/2", "p-local splitting lemma for suspensions");
    rep.table({"prime"});
    for (int p : ps.primes)
        rep.row({std::to_string(p)});
}

void cmd_retraction(const Globals&, Options o, Report& rep)
{
    apply_presentation(o, "cofiber");
    CofiberPresentation c{space_arg(rep, "A", require(o.a, "--A")), space_arg(rep, "Z", require(o.z, "--Z")),
                          !o.inert.empty(), o.inert};
    RetractionReport r = retraction_report(c);
    rep.results["m"] = r.m;
    rep.results["n"] = r.n;
    rep.results["excluded"] = primes_json(r.excluded);
    rep.results["excluded_A"] = primes_json(r.excluded_attached);
    rep.results["excluded_Z"] = primes_json(r.excluded_quotient);
    rep.results["n_is_homology_proxy"] = r.n_is_homology_proxy;
    rep.cited("retraction of Omega(S^m v S^n) off OmegaY away from the excluded primes", "retraction theorem");
    rep.model("n", "least nonvanishing reduced rational homology degree of Z, shifted by m - 1");
    rep.add("inertness of the attaching map", "THEOREM_CITED",
            c.inert_asserted ? "asserted by the user: " + c.justification : "assumed hypothesis, not asserted");
    rep.table({"m", "n", "excluded", "excluded_A", "excluded_Z"});
    rep.row({std::to_string(r.m), std::to_string(r.n), primes_cell(r.excluded), primes_cell(r.excluded_attached),
             primes_cell(r.excluded_quotient)});
}

struct Command {
    CLI::App* app = nullptr;
    std::function<void(const Globals&, const Options&, Report&)> handler;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals g;
    Options o;
    Report rep;

    CLI::App app{"Growth invariants of loop spaces and free loop spaces", "loopgrowth"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--max-degree", g.max_degree, "truncation degree N")->check(CLI::NonNegativeNumber);
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--lambda", g.lambda, "controlled growth ratio bound");
    app.add_option("--epsilon", g.epsilon, "controlled growth tolerance");
    app.add_option("--k-min", g.k_min, "first degree of the growth tail");
    app.add_option("--threads", g.threads, "OpenMP worker threads (0 keeps the default)")
        ->check(CLI::NonNegativeNumber);

    std::vector<Command> commands;
    auto add = [&](const char* name, const char* help, auto handler) -> CLI::App* {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.push_back(Command{sub, handler});
        return sub;
    };
    auto with_space = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("space", o.space, "space expression");
        if (required)
            opt->required();
    };
    auto with_inert = [&](CLI::App* sub) {
        sub->add_option("--inert", o.inert, "justification that the attaching map is inert");
        sub->add_option("--presentation", o.presentation, "JSON presentation file");
    };

    with_space(add("parse", "echo the canonical expression", cmd_parse), true);
    with_space(add("homology", "rational homology Hilbert series", cmd_homology), true);
    with_space(add("loop-series", "loop space homology series", cmd_loop_series), true);
    with_space(add("rho", "radius of convergence of the loop series", cmd_rho), true);
    with_space(add("log-index", "log index and controlled growth check", cmd_log_index), true);

    CLI::App* cof = add("cofiber", "inert cofibration verdict", cmd_cofiber);
    cof->add_option("--A", o.a, "A, with Sigma A attached");
    cof->add_option("--Z", o.z, "cofiber Z");
    with_inert(cof);

    CLI::App* cs = add("connsum", "connected sum verdict", cmd_connsum);
    cs->add_option("--A", o.a, "collar A");
    cs->add_option("--M", o.m_space, "first summand M");
    cs->add_option("--N", o.n_space, "second summand N");
    with_inert(cs);

    CLI::App* yc = add("yclass", "verdict for the class of Y", cmd_yclass);
    yc->add_option("--m", o.m, "sphere dimension m");
    yc->add_option("--n", o.n, "total dimension n");
    yc->add_option("--J", o.j, "J, with Sigma J attached");
    with_inert(yc);

    CLI::App* fl = add("free-loop", "free loop space homology of a wedge of spheres", cmd_free_loop);
    with_space(fl, false);
    fl->add_option("--alphabet", o.alphabet, "generator degrees instead of a space")->delimiter(',');
    fl->add_option("--method", o.method, "necklace, bruteforce or both")
        ->check(CLI::IsMember({"necklace", "bruteforce", "both"}));
    fl->add_flag("--table-only", o.table_only, "emit the table without the growth claim");

    CLI::App* hm = add("hm-census", "Hilton-Milnor sphere factor census", cmd_hm_census);
    hm->add_option("--m", o.m, "first sphere dimension")->required();
    hm->add_option("--n", o.n, "second sphere dimension")->required();

    CLI::App* tr = add("torsion", "exponent witness and mod p^r growth model", cmd_torsion);
    tr->add_option("--m", o.m, "first sphere dimension")->required();
    tr->add_option("--n", o.n, "second sphere dimension")->required();
    tr->add_option("--p", o.p, "prime")->required();
    tr->add_option("--r", o.r, "exponent r")->required();

    CLI::App* pr = add("primes", "excluded primes", cmd_primes);
    pr->add_option("--d", o.d, "dimension");
    pr->add_option("--s", o.s, "connectivity");
    pr->add_option("--space", o.space, "space expression instead of --d/--s");

    CLI::App* rt = add("retraction", "retraction of Omega(S^m v S^n)", cmd_retraction);
    rt->add_option("--A", o.a, "A, with Sigma A attached");
    rt->add_option("--Z", o.z, "cofiber Z");
    with_inert(rt);

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("loopgrowth");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    const Command* chosen = nullptr;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        json error = error_json(to_string(ErrorKind::Parse), e.what());
        rep.request = json{{"command", nullptr}};
        if (g.format == "csv")
            emit_csv_error(out, error);
        else
            emit_json(out, rep, error);
        err << "loopgrowth: " << e.what() << '\n';
        return kParse;
    }
    for (const Command& c : commands)
        if (c.app->parsed())
            chosen = &c;

#ifdef _OPENMP
    if (g.threads > 0)
        omp_set_num_threads(g.threads);
#endif

    rep.request["command"] = chosen->app->get_name();
    rep.request["arguments"] = json::object();
    rep.request["max_degree"] = g.max_degree;
    rep.request["format"] = g.format;
    rep.request["lambda"] = g.lambda;
    rep.request["epsilon"] = g.epsilon;
    rep.request["k_min"] = g.k_min;

    auto fail = [&](const json& error, int code) {
        if (g.format == "csv")
            emit_csv_error(out, error);
        else
            emit_json(out, rep, error);
        err << "loopgrowth: " << error["kind"].get<std::string>() << ": " << error["message"].get<std::string>()
            << '\n';
        return code;
    };

    try {
        chosen->handler(g, o, rep);
    } catch (const ParseError& e) {
        return fail(error_json(to_string(e.kind()), e.what(), e.offset(), e.expected()), kParse);
    } catch (const Error& e) {
        return fail(error_json(to_string(e.kind()), e.what()), kHypothesisOrValidation);
    } catch (const std::exception& e) {
        return fail(error_json(to_string(ErrorKind::Validation), e.what()), kHypothesisOrValidation);
    }

    if (g.format == "csv")
        emit_csv(out, rep);
    else
        emit_json(out, rep, nullptr);
    return kOk;
}

}  // namespace loopgrowth::cli
