#include "gridposet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridposet/asymptotics.hpp"
#include "gridposet/chain_decomposition.hpp"
#include "gridposet/containers.hpp"
#include "gridposet/exact_counting.hpp"
#include "gridposet/level_graphs.hpp"
#include "gridposet/matching_decomposition.hpp"
#include "gridposet/seeding.hpp"
#include "gridposet/supersaturation.hpp"

namespace gridposet::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::string subcommand;
    int n = 2;
    std::optional<int> D;
    std::optional<int> d;
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    std::string format = "json";
    std::uint64_t cap = 0;
    std::string out;
    bool no_timing = false;

    // subcommand extras
    bool certify = false;
    std::string method = "downsets";
    std::vector<int> gaps{1};
    bool exhaustive = false;
    bool family = false;
    std::string dump;
    int level = 0;
    std::vector<int> ns;
    int d_min = 1;
    int d_max = 10;
    int d_step = 1;

    Limits limits() const
    {
        Limits l;
        l.enumerate = cap;
        return l;
    }

    GridBox box() const
    {
        if (D && d)
            throw CLI::ValidationError("give either --D or --d, not both");
        if (!D && !d)
            throw CLI::ValidationError("--D or --d is required");
        return D ? GridBox(n, *D) : GridBox(n, *d + 1);
    }
};

// A command fills `result` and returns false when it found a violation.
using Command = std::function<bool(const RunConfig&, Json& result, std::ostream* table)>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string decimal_string(const Decimal& x)
{
    return to_string(x, 20);
}

std::string points_string(const std::vector<Point>& pts)
{
    std::string s;
    for (const auto& p : pts) {
        if (!s.empty())
            s += ' ';
        s += p.to_compact();
    }
    return s;
}

Json config_json(const RunConfig& c)
{
    Json j;
    j["subcommand"] = c.subcommand;
    j["n"] = c.n;
    j["D"] = c.D ? Json(*c.D) : Json(nullptr);
    j["d"] = c.d ? Json(*c.d) : Json(nullptr);
    j["seed"] = std::to_string(c.seed);
    j["trials"] = c.trials;
    j["format"] = c.format;
    j["cap"] = c.cap;
    if (c.subcommand == "count") {
        j["certify"] = c.certify;
        j["method"] = c.method;
    } else if (c.subcommand == "supersat") {
        j["a"] = c.gaps;
        j["exhaustive"] = c.exhaustive;
    } else if (c.subcommand == "containers") {
        j["family"] = c.family;
    } else if (c.subcommand == "asym") {
        j["ns"] = c.ns;
        j["D_min"] = c.d_min;
        j["D_max"] = c.d_max;
        j["D_step"] = c.d_step;
    } else if (c.subcommand == "graph" || c.subcommand == "distribution") {
        j["level"] = c.level;
    }
    return j;
}

// ---- count

bool cmd_count(const RunConfig& c, Json& r, std::ostream*)
{
    const GridBox box = c.box();
    const Limits limits = c.limits();
    r["box"] = box.to_string();
    r["points"] = box.total_points().get_str();
    r["middle_rank"] = box.middle_rank();
    const BigCount N = middle_layer_size(box);
    r["middle_layer"] = N.get_str();
    const BigCount count = c.method == "antichains" ? count_antichains(box, limits) : count_downsets(box, limits);
    r["count"] = count.get_str();
    r["log2_count"] = decimal_string(log2_of(count));
    r["lower_bound_log2"] = N.get_str();
    bool ok = to_decimal(N) <= log2_of(count);
    if (c.d) {
        if (*c.d == 1) {
            r["closed_form"] = binomial_p1(c.n).get_str();
            ok = ok && binomial_p1(c.n) == count;
        } else if (*c.d == 2) {
            r["closed_form"] = macmahon_p2(c.n).get_str();
            ok = ok && macmahon_p2(c.n) == count;
        }
    }
    if (c.certify) {
        const BoundReport br = certified_upper_bound(box, limits);
        r["certified_log2_upper"] = decimal_string(br.certified_log2_upper);
        r["certified_consistent"] = br.consistent();
        ok = ok && br.consistent() && br.certified_log2_upper >= log2_of(count);
    }
    return ok;
}

// ---- chains

Json plan_json(const LevelPlan& p)
{
    Json j;
    j["level"] = p.level;
    j["reference_level"] = p.reference_level;
    j["mirrored"] = p.mirrored;
    j["regime"] = to_string(p.regime);
    j["theta"] = to_fraction_string(p.theta);
    j["reference_size"] = p.reference_size.get_str();
    j["target_size"] = p.target_size.get_str();
    return j;
}

bool cmd_chains(const RunConfig& c, Json& r, std::ostream*)
{
    const GridBox box = c.box();
    Limits limits = c.limits();
    const ChainSampler sampler(box, limits);
    const std::uint64_t trials = std::max<std::uint64_t>(c.trials, 1);
    const Rational bound = chain_count_bound(box);

    std::uint64_t violations = 0;
    std::string witness;
    std::size_t lo = SIZE_MAX;
    std::size_t hi = 0;
    BigCount total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const ChainDecomposition cd = sampler.sample(derive_seed(c.seed, t));
        const ChainAudit audit = audit_chain_decomposition(sampler, cd);
        if (!audit.ok()) {
            if (violations++ == 0)
                witness = "trial " + std::to_string(t) + ": " + audit.witness;
        }
        lo = std::min(lo, cd.chain_count());
        hi = std::max(hi, cd.chain_count());
        total += static_cast<unsigned long>(cd.chain_count());
        if (t == 0 && !c.dump.empty()) {
            std::ofstream f(c.dump);
            if (!f)
                throw std::runtime_error("cannot write " + c.dump);
            f << export_chains(cd);
        }
    }
    Rational mean(total, mpz_class(std::to_string(trials)));
    mean.canonicalize();

    r["box"] = box.to_string();
    r["middle_layer"] = middle_layer_size(box).get_str();
    r["chain_bound"] = to_fraction_string(bound);
    r["in_theorem_scope"] = sampler.in_theorem_scope();
    if (!sampler.in_theorem_scope())
        r["scope_note"] = "D <= 3: levels near the middle use a single maximum matching";
    r["trials"] = trials;
    r["min_chains"] = lo;
    r["max_chains"] = hi;
    r["mean_chains"] = to_fraction_string(mean);
    r["min_margin"] = to_fraction_string(bound - Rational(static_cast<unsigned long>(hi)));
    r["violations"] = violations;
    r["first_violation"] = witness;
    Json levels = Json::array();
    for (const auto& s : sampler.levels())
        levels.push_back(plan_json(s.plan));
    r["levels"] = levels;
    return violations == 0;
}

// ---- supersat

bool cmd_supersat(const RunConfig& c, Json& r, std::ostream* table)
{
    const GridBox box = c.box();
    for (int a : c.gaps)
        if (a < 1)
            throw CLI::ValidationError("--a values must be positive");
    SupersaturationAudit audit;
    std::string mode;
    if (c.exhaustive) {
        mode = "exhaustive";
        audit = exhaustive_supersaturation_audit(box, c.gaps, table != nullptr);
    } else {
        mode = "random";
        audit = random_supersaturation_audit(box, c.gaps, c.trials == 0 ? 100 : c.trials, c.seed);
    }
    if (table) {
        *table << csv_header() << '\n';
        for (const auto& rep : audit.reports)
            *table << to_csv_row(rep) << '\n';
    }
    r["box"] = box.to_string();
    r["mode"] = mode;
    Json thresholds = Json::object();
    for (int a : c.gaps)
        thresholds[std::to_string(a)] = to_fraction_string(supersaturation_threshold(box, a));
    r["thresholds"] = thresholds;
    r["sets_checked"] = audit.sets_checked;
    r["active_checks"] = audit.active_checks;
    r["violations"] = audit.violations;
    for (const auto& rep : audit.reports)
        if (!rep.satisfied()) {
            r["first_violation"] = to_csv_row(rep);
            break;
        }
    return audit.violations == 0;
}

// ---- containers

bool cmd_containers(const RunConfig& c, Json& r, std::ostream*)
{
    const GridBox box = c.box();
    const Limits limits = c.limits();
    const BoundReport br = certified_upper_bound(box, limits);
    r["box"] = box.to_string();
    r["middle_layer"] = br.middle_layer.get_str();
    r["ordering_as_stated"] = br.ordering_as_stated;
    r["premise_status"] = to_string(br.premise.status);
    r["premise_ok"] = br.premise.ok;
    r["premise_sets_checked"] = br.premise.sets_checked;
    Json limits_json = Json::array();
    for (std::size_t k = 0; k < br.lemma.fingerprint_limits.size(); ++k)
        limits_json.push_back({{"pool", br.lemma.pool_sizes[k].get_str()},
                               {"fingerprint_limit", br.lemma.fingerprint_limits[k].get_str()}});
    r["rounds"] = limits_json;
    r["family_bound_exact"] = br.lemma.family_bound_exact;
    if (br.lemma.family_bound_exact)
        r["family_size_bound"] = br.lemma.family_size_bound.get_str();
    r["log2_container_count_bound"] = decimal_string(br.log2_container_count_bound);
    r["stated_container_size_bound"] = to_fraction_string(br.lemma.stated_container_size_bound);
    r["max_container_size_bound"] = to_fraction_string(br.max_container_size_bound);
    r["certified_log2_upper"] = decimal_string(br.certified_log2_upper);
    r["exact_count"] = br.exact_count ? Json(br.exact_count->get_str()) : Json(nullptr);
    r["exact_log2"] = br.exact_log2 ? Json(decimal_string(*br.exact_log2)) : Json(nullptr);
    r["consistent"] = br.consistent();
    bool ok = br.consistent() && br.premise.ok;

    if (c.family || !c.dump.empty()) {
        const ContainerParams params = ContainerParams::standard(box);
        Limits family_limits = limits;
        family_limits.objects = 1'000'000;
        const ContainerFamily fam = build_containers(box, params, family_limits);
        Json f;
        f["containers"] = fam.containers.size();
        f["largest_container"] = fam.largest_container();
        f["max_fingerprint"] = fam.max_fingerprint;
        bool fits = true;
        for (std::size_t k = 0; k < fam.max_fingerprint.size(); ++k)
            fits = fits && mpz_class(static_cast<unsigned long>(fam.max_fingerprint[k])) <=
                               br.lemma.fingerprint_limits[k];
        fits = fits && Rational(static_cast<unsigned long>(fam.largest_container())) <= br.max_container_size_bound;
        if (br.lemma.family_bound_exact)
            fits = fits && mpz_class(static_cast<unsigned long>(fam.containers.size())) <= br.lemma.family_size_bound;
        f["within_lemma_bounds"] = fits;
        ok = ok && fits;
        if (box.total_points() <= mpz_class(std::to_string(std::min<std::uint64_t>(limits.enumerate, 64)))) {
            const ComparabilityGraph graph(box);
            bool covered = true;
            std::uint64_t checked = 0;
            for_each_antichain(
                box,
                [&](PointMask mask) {
                    PointBits bits(graph.size(), mask);
                    ++checked;
                    covered = covered && fam.covers(bits);
                },
                limits);
            f["antichains_checked"] = checked;
            f["covers_all_antichains"] = covered;
            ok = ok && covered;
        }
        r["family"] = f;
        if (!c.dump.empty()) {
            std::ofstream out(c.dump);
            if (!out)
                throw std::runtime_error("cannot write " + c.dump);
            out << "# box " << box.to_string() << "\n# containers " << fam.containers.size() << '\n';
            for (const auto& cont : fam.containers)
                out << points_string(bits_to_points(box, cont)) << '\n';
        }
    }
    return ok;
}

// ---- asym

bool cmd_asym(const RunConfig& c, Json& r, std::ostream* table)
{
    if (c.d_step < 1 || c.d_min < 1 || c.d_max < c.d_min)
        throw CLI::ValidationError("need 1 <= D_min <= D_max and D_step >= 1");
    std::vector<int> ns = c.ns.empty() ? std::vector<int>{c.n} : c.ns;
    if (table)
        *table << asymptotics_csv_header() << '\n';
    Json rows = Json::array();
    for (int n : ns)
        for (int D = c.d_min; D <= c.d_max; D += c.d_step) {
            const AsymptoticReport rep = compare_middle_layer(n, D);
            if (table)
                *table << to_csv_row(rep) << '\n';
            rows.push_back({{"n", n},
                            {"D", D},
                            {"exact", rep.exact.get_str()},
                            {"estimate", decimal_string(rep.clt_estimate)},
                            {"relative_error", decimal_string(rep.relative_error)}});
        }
    r["rows"] = rows;
    return true;
}

// ---- graph / distribution

bool cmd_graph(const RunConfig& c, Json& r, std::ostream* table)
{
    const GridBox box = c.box();
    const LevelGraph g = build_level_graph(box, c.level);
    const DegreeIdentityCheck id = check_degree_identity(g);
    if (table)
        *table << export_edge_list(g);
    r["box"] = box.to_string();
    r["level"] = c.level;
    r["lower_size"] = g.lower().size();
    r["upper_size"] = g.upper().size();
    r["edge_count"] = g.edges().size();
    r["degree_identity"] = id.holds;
    if (id.counterexample)
        r["counterexample"] = g.lower()[id.counterexample->lower].to_compact() + ">" +
                              g.upper()[id.counterexample->upper].to_compact();
    Json edges = Json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"lower", g.lower()[e.lower].to_compact()},
                         {"upper", g.upper()[e.upper].to_compact()},
                         {"color", e.color},
                         {"weight", e.weight}});
    r["edges"] = edges;
    return id.holds;
}

bool cmd_distribution(const RunConfig& c, Json& r, std::ostream* table)
{
    const GridBox box = c.box();
    const LevelGraph g = build_level_graph(box, c.level);
    const LevelFraction lf = build_level_fraction(g);
    const MatchingDistribution dist = decompose(lf.graph, lf.fraction);
    const PolytopeCheck check = verify_decomposition(lf.graph, lf.fraction, dist);
    if (table)
        *table << export_distribution(dist);
    r["box"] = box.to_string();
    r["plan"] = plan_json(lf.plan);
    r["edge_count"] = lf.graph.edges.size();
    r["matching_size"] = dist.matching_size;
    r["atom_count"] = dist.atoms.size();
    r["verified"] = check.ok;
    if (!check.ok)
        r["witness"] = check.witness;
    Json atoms = Json::array();
    for (const auto& atom : dist.atoms) {
        Json edges = Json::array();
        for (auto e : atom.edges)
            edges.push_back(g.lower()[g.edges()[e].lower].to_compact() + ">" +
                            g.upper()[g.edges()[e].upper].to_compact());
        atoms.push_back({{"probability", to_fraction_string(atom.probability)}, {"edges", edges}});
    }
    r["atoms"] = atoms;
    return check.ok;
}

// ---- output

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out,
             char list_sep)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out, list_sep);
    } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); })) {
        std::string s;
        for (const auto& e : j) {
            if (!s.empty())
                s += list_sep;
            s += e.is_string() ? e.get<std::string>() : e.dump();
        }
        out.emplace_back(prefix, s);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k)
            flatten(j[k], prefix + "." + std::to_string(k), out, list_sep);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"')
            q += '"';
        q += ch;
    }
    return q + "\"";
}

bool is_table_command(const std::string& sub)
{
    return sub == "supersat" || sub == "asym";
}

bool is_export_command(const std::string& sub)
{
    return sub == "graph" || sub == "distribution";
}

void emit(const RunConfig& c, const Json& record, const std::string& table, std::ostream& os)
{
    if (c.format == "json") {
        os << record.dump(2) << '\n';
        return;
    }
    if (c.format == "csv" && is_table_command(c.subcommand) && record["status"] != "error") {
        std::vector<std::pair<std::string, std::string>> meta;
        flatten(record["config"], "", meta, ';');
        os << "# tool=" << record["tool"].get<std::string>() << " version=" << record["version"].get<std::string>();
        for (const auto& [k, v] : meta)
            os << ' ' << k << '=' << v;
        os << '\n' << table;
        os << "# status=" << record["status"].get<std::string>()
           << " wall_clock_ms=" << (record["wall_clock_ms"].is_null() ? "null" : record["wall_clock_ms"].dump())
           << '\n';
        return;
    }
    if (c.format == "text" && is_export_command(c.subcommand) && record["status"] != "error") {
        os << table;
        return;
    }
    std::vector<std::pair<std::string, std::string>> fields;
    flatten(record, "", fields, c.format == "csv" ? ';' : ' ');
    if (c.format == "csv") {
        std::string header;
        std::string row;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k > 0) {
                header += ',';
                row += ',';
            }
            header += csv_field(fields[k].first);
            row += csv_field(fields[k].second);
        }
        os << header << '\n' << row << '\n';
    } else {
        for (const auto& [k, v] : fields)
            os << k << ": " << v << '\n';
    }
}

std::uint64_t default_cap()
{
    if (const char* env = std::getenv(kCapEnv)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return Limits{}.enumerate;
}

void add_common(CLI::App* sub, RunConfig& c, bool needs_box)
{
    sub->add_option("--n", c.n, "side length (coordinates 0..n-1)")->check(CLI::Range(1, 1'000'000));
    if (needs_box) {
        sub->add_option("--D", c.D, "dimension of the box")->check(CLI::Range(1, 100'000));
        sub->add_option("--d", c.d, "partition form: box of dimension d+1")->check(CLI::Range(0, 100'000));
    }
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--trials", c.trials, "number of trials / random sets");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--cap", c.cap, "largest box (in points) for exhaustive enumeration");
    sub->add_option("--out", c.out, "write the record to this file");
    sub->add_flag("--no-timing", c.no_timing, "omit wall-clock time so reruns are byte-identical");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    c.cap = default_cap();
    CLI::App app{"Exact and randomized computations on the grid poset {0..n-1}^D", "gridposet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::vector<std::pair<CLI::App*, Command>> commands;

    auto* count = app.add_subcommand("count", "count antichains (equivalently down-sets)");
    add_common(count, c, true);
    count->add_flag("--certify", c.certify, "also compute the container upper bound");
    count->add_option("--method", c.method, "enumeration path")->check(CLI::IsMember({"downsets", "antichains"}));
    commands.emplace_back(count, cmd_count);

    auto* chains = app.add_subcommand("chains", "sample random chain decompositions and audit them");
    add_common(chains, c, true);
    chains->add_option("--dump", c.dump, "write the first decomposition to this file");
    commands.emplace_back(chains, cmd_chains);

    auto* supersat = app.add_subcommand("supersat", "audit the comparable-pair supersaturation bound");
    add_common(supersat, c, true);
    supersat->add_option("--a", c.gaps, "rank gaps (repeatable)")->expected(1, -1);
    supersat->add_flag("--exhaustive", c.exhaustive, "check every subset (tiny boxes)");
    commands.emplace_back(supersat, cmd_supersat);

    auto* containers = app.add_subcommand("containers", "certified upper bound from graph containers");
    add_common(containers, c, true);
    containers->add_flag("--family", c.family, "build the container family and check it");
    containers->add_option("--dump", c.dump, "write the container family to this file");
    commands.emplace_back(containers, cmd_containers);

    auto* asym = app.add_subcommand("asym", "middle-layer estimate against the exact value");
    add_common(asym, c, false);
    asym->add_option("--ns", c.ns, "several side lengths")->expected(1, -1);
    asym->add_option("--D-min", c.d_min, "first dimension");
    asym->add_option("--D-max", c.d_max, "last dimension");
    asym->add_option("--D-step", c.d_step, "dimension step");
    commands.emplace_back(asym, cmd_asym);

    auto* graph = app.add_subcommand("graph", "edge list of the level graph G_i");
    add_common(graph, c, true);
    graph->add_option("--level", c.level, "lower level i")->required();
    commands.emplace_back(graph, cmd_graph);

    auto* distribution = app.add_subcommand("distribution", "exact matching distribution for one level");
    add_common(distribution, c, true);
    distribution->add_option("--level", c.level, "lower level i")->required();
    commands.emplace_back(distribution, cmd_distribution);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Command command;
    for (auto& [sub, cmd] : commands)
        if (sub->parsed()) {
            c.subcommand = sub->get_name();
            command = cmd;
        }
    // Tables default to CSV.
    if (is_table_command(c.subcommand) && app.get_subcommand(c.subcommand)->count("--format") == 0)
        c.format = "csv";

    Json record;
    record["tool"] = "gridposet";
    record["version"] = kToolVersion;
    record["config"] = config_json(c);
    Json result = Json::object();
    std::ostringstream table;
    int code = exit_ok;
    const auto start = std::chrono::steady_clock::now();
    try {
        const bool want_table = (c.format == "csv" && is_table_command(c.subcommand)) ||
                                (c.format == "text" && is_export_command(c.subcommand));
        const bool ok = command(c, result, want_table ? &table : nullptr);
        record["status"] = ok ? "ok" : "violation";
        code = ok ? exit_ok : exit_violation;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const CapExceeded& e) {
        record["status"] = "error";
        result["error"] = "cap_exceeded";
        result["message"] = e.what();
        code = exit_cap;
    } catch (const InvariantViolation& e) {
        record["status"] = "error";
        result["error"] = "invariant_violation";
        result["message"] = e.what();
        code = exit_violation;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    record["result"] = result;
    if (c.no_timing)
        record["wall_clock_ms"] = nullptr;
    else
        record["wall_clock_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    if (c.out.empty()) {
        emit(c, record, table.str(), out);
    } else {
        std::ofstream f(c.out);
        if (!f) {
            err << "cannot write " << c.out << '\n';
            return exit_usage;
        }
        emit(c, record, table.str(), f);
    }
    if (code != exit_ok && record["status"] == "error")
        err << result["error"].get<std::string>() << ": " << result["message"].get<std::string>() << '\n';
    return code;
}

}  // namespace gridposet::cli
