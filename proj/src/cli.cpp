#include "chambercross/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include "chambercross/lattice.hpp"
#include "chambercross/oracle.hpp"
#include "chambercross/presets.hpp"
#include "chambercross/verify.hpp"
#include "chambercross/wallcross.hpp"

namespace chambercross {

using Json = nlohmann::ordered_json;

namespace {

// Interior chamber counts known independently of the sweep.
const std::map<std::string, std::size_t> kKnownChamberCounts = {
    {"A1", 1}, {"A2", 2}, {"B2", 3}, {"A3", 7},
};

std::string show(const IntVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string show(const RatVec& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

Json rat_json(const RatVec& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

/// The vectors as given, before any change to a basis of Z Phi.
IntMatrix input_vectors(const VectorConfig& cfg)
{
    if (!cfg.rewritten())
        return cfg.vectors;
    IntMatrix out;
    for (const auto& w : cfg.vectors) {
        IntVec v(cfg.basis[0].size(), 0);
        for (std::size_t k = 0; k < w.size(); ++k)
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] += w[k] * cfg.basis[k][j];
        out.push_back(v);
    }
    return out;
}

std::size_t input_dimension(const VectorConfig& cfg)
{
    return cfg.rewritten() ? cfg.basis[0].size() : cfg.rank;
}

Json config_json(const VectorConfig& cfg)
{
    Json j;
    j["name"] = cfg.name;
    j["rank"] = cfg.rank;
    j["vectors"] = input_vectors(cfg);
    if (cfg.rewritten()) {
        j["basis"] = cfg.basis;
        j["index"] = cfg.index;
        j["working_vectors"] = cfg.vectors;
    }
    return j;
}

Json walls_json(const ChamberComplex& cx)
{
    Json a = Json::array();
    for (std::size_t w = 0; w < cx.walls.size(); ++w) {
        const auto& wall = cx.walls[w];
        a.push_back({{"id", w}, {"normal", wall.normal}, {"on_wall", wall.on_wall},
                     {"facet", wall.is_facet()}});
    }
    return a;
}

Json chamber_json(const Chamber& ch)
{
    Json j;
    j["id"] = ch.id;
    j["rays"] = ch.rays;
    j["witness"] = rat_json(ch.witness);
    Json adj = Json::array();
    for (const auto& a : ch.adjacent)
        adj.push_back({{"wall", a.wall}, {"neighbor", a.neighbor}});
    j["adjacent"] = adj;
    return j;
}

bool use_shifts(const QuasiPoly& k, bool shift_form)
{
    return shift_form || k.coset_count() > kMaxCosets;
}

Json quasi_json(const QuasiPoly& k, bool shift_form)
{
    Json j;
    j["period"] = k.period();
    if (use_shifts(k, shift_form)) {
        j["form"] = "shifts";
        Json a = Json::array();
        for (const auto& [y, p] : k.terms())
            a.push_back({{"shift", rat_json(y)}, {"poly", p.str()}});
        j["shifts"] = a;
        j["expression"] = k.str();
    } else {
        j["form"] = "cosets";
        Json a = Json::array();
        for (const auto& c : k.cosets())
            a.push_back({{"residue", c.representative}, {"poly", c.poly.str()}});
        j["cosets"] = a;
    }
    return j;
}

void write_json(std::ostream& out, const Json& j)
{
    out << j.dump(2) << "\n";
}

void write_config_text(std::ostream& out, const VectorConfig& cfg)
{
    out << "config " << cfg.name << ": rank " << cfg.rank << ", " << cfg.size() << " vectors\n ";
    for (const auto& v : input_vectors(cfg))
        out << " " << show(v);
    out << "\n";
    if (cfg.rewritten()) {
        out << "  working basis (index " << cfg.index << "):";
        for (const auto& b : cfg.basis)
            out << " " << show(b);
        out << "\n  polynomials use coordinates in this basis\n";
    }
}

void write_walls_text(std::ostream& out, const ChamberComplex& cx)
{
    out << "walls: " << cx.walls.size() << "\n";
    for (std::size_t w = 0; w < cx.walls.size(); ++w) {
        out << "  w" << w << " normal " << show(cx.walls[w].normal);
        if (cx.walls[w].is_facet())
            out << " (facet)";
        out << "\n";
    }
}

void write_chamber_text(std::ostream& out, const Chamber& ch)
{
    out << "chamber c" << ch.id << "\n  rays:";
    for (const auto& r : ch.rays)
        out << " " << show(r);
    out << "\n  witness: " << show(ch.witness) << "\n  neighbors:";
    for (const auto& a : ch.adjacent)
        out << " c" << a.neighbor << "/w" << a.wall;
    out << "\n";
}

void write_quasi_text(std::ostream& out, const QuasiPoly& k, bool shift_form)
{
    out << "  partition (period " << k.period() << "):";
    if (use_shifts(k, shift_form)) {
        out << " " << k.str() << "\n";
        return;
    }
    std::istringstream lines(k.coset_str());
    out << "\n";
    for (std::string line; std::getline(lines, line);)
        out << "    " << line << "\n";
}

SolverOptions solver_options(const RunConfig& run)
{
    SolverOptions o;
    o.recheck_truncation = run.debug_truncation;
    o.check_all_jumps = run.check_all_jumps;
    return o;
}

int cmd_solve(const RunConfig& run, const VectorConfig& cfg, std::ostream& out)
{
    Solver solver(solver_options(run));
    auto sol = solver.solve(cfg);
    const auto& cx = sol->complex;
    if (run.format == OutputFormat::json) {
        Json doc;
        doc["config"] = config_json(cfg);
        doc["walls"] = walls_json(cx);
        Json chambers = Json::array();
        for (std::size_t c = 1; c < cx.chambers.size(); ++c) {
            Json j = chamber_json(cx.chambers[c]);
            j["volume_poly"] = sol->volume[c].str();
            j["partition_qp"] = quasi_json(sol->partition[c], run.shift_form);
            chambers.push_back(std::move(j));
        }
        doc["chambers"] = chambers;
        write_json(out, doc);
        return kExitOk;
    }
    write_config_text(out, cfg);
    write_walls_text(out, cx);
    out << "interior chambers: " << cx.interior_count() << "\n";
    for (std::size_t c = 1; c < cx.chambers.size(); ++c) {
        write_chamber_text(out, cx.chambers[c]);
        out << "  volume: " << sol->volume[c].str() << "\n";
        write_quasi_text(out, sol->partition[c], run.shift_form);
    }
    return kExitOk;
}

int cmd_chambers(const RunConfig& run, const VectorConfig& cfg, std::ostream& out)
{
    ChamberComplex cx = chamber_complex(cfg);
    if (run.format == OutputFormat::json) {
        Json doc;
        doc["config"] = config_json(cfg);
        doc["walls"] = walls_json(cx);
        Json chambers = Json::array();
        for (std::size_t c = 1; c < cx.chambers.size(); ++c)
            chambers.push_back(chamber_json(cx.chambers[c]));
        doc["chambers"] = chambers;
        write_json(out, doc);
        return kExitOk;
    }
    write_config_text(out, cfg);
    write_walls_text(out, cx);
    out << "interior chambers: " << cx.interior_count() << "\n";
    for (std::size_t c = 1; c < cx.chambers.size(); ++c)
        write_chamber_text(out, cx.chambers[c]);
    return kExitOk;
}

struct Evaluation {
    IntVec point;
    /// Working coordinates; nothing when the point is off Z Phi.
    std::optional<IntVec> working;
    std::vector<std::size_t> closure;
    std::size_t chamber = 0;
    Rational partition = 0, volume = 0;
    Integer brute = 0;
    bool match() const { return partition == brute; }
};

Evaluation evaluate_point(const ChamberSolution& sol, BruteCounter& counter, const IntVec& a)
{
    const auto& cfg = sol.complex.config;
    Evaluation e;
    e.point = a;
    auto w = cfg.to_working(to_rational(a));
    if (w && std::all_of(w->begin(), w->end(), [](const Rational& x) { return x.get_den() == 1; })) {
        IntVec iw;
        for (const auto& x : *w)
            iw.push_back(to_long(x));
        e.working = iw;
    }
    if (w) {
        // on a wall: lowest chamber id whose closure holds the point
        e.closure = sol.complex.closure_chambers(*w);
        if (!e.closure.empty())
            e.chamber = e.closure.front();
        e.volume = *sol.volume[e.chamber].evaluate(*w).to_rational();
    }
    if (e.working) {
        e.partition = sol.partition[e.chamber].evaluate(*e.working);
        e.brute = counter.count(*e.working);
    }
    return e;
}

int cmd_eval(const RunConfig& run, const VectorConfig& cfg, std::ostream& out, bool with_volume)
{
    if (run.points.empty())
        throw ValidationError("no evaluation point (use --point a1,a2,...)");
    std::size_t dim = input_dimension(cfg);
    for (const auto& p : run.points)
        if (p.size() != dim)
            throw ValidationError("point " + show(p) + " has " + std::to_string(p.size()) +
                                  " coordinates, expected " + std::to_string(dim));
    Solver solver(solver_options(run));
    auto sol = solver.solve(cfg);
    BruteCounter counter(cfg);
    bool ok = true;
    Json results = Json::array();
    for (const auto& p : run.points) {
        Evaluation e = evaluate_point(*sol, counter, p);
        ok = ok && e.match();
        if (run.format == OutputFormat::json) {
            Json j;
            j["point"] = p;
            j["chamber"] = e.chamber;
            j["closure_chambers"] = e.closure;
            j["partition"] = to_string(e.partition);
            j["brute_count"] = e.brute.get_str();
            if (with_volume)
                j["volume"] = to_string(e.volume);
            j["match"] = e.match();
            results.push_back(std::move(j));
            continue;
        }
        out << "a = " << show(p) << ": chamber c" << e.chamber;
        if (e.closure.size() > 1) {
            out << " (closure of";
            for (auto c : e.closure)
                out << " c" << c;
            out << ")";
        }
        out << "\n  k = " << to_string(e.partition) << " (quasi-polynomial), " << e.brute.get_str()
            << " (brute force)" << (e.match() ? "" : "  MISMATCH") << "\n";
        if (with_volume)
            out << "  volume = " << to_string(e.volume) << "\n";
    }
    if (run.format == OutputFormat::json)
        write_json(out, Json{{"config", cfg.name}, {"results", results}, {"match", ok}});
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& run, const VectorConfig& cfg, std::ostream& out)
{
    VerifyOptions opt = run.budget ? VerifyOptions::with_budget(*run.budget) : VerifyOptions{};
    opt.seed = run.seed;
    opt.check_all_jumps = run.check_all_jumps;
    opt.recheck_truncation = run.debug_truncation;
    if (run.preset) {
        auto it = kKnownChamberCounts.find(cfg.name);
        if (it != kKnownChamberCounts.end())
            opt.expected_chambers = it->second;
    }
    VerifyReport rep = run_verify(cfg, opt);
    if (run.format == OutputFormat::json) {
        Json doc;
        doc["config"] = rep.config;
        doc["passed"] = rep.passed();
        if (rep.internal_error)
            doc["internal_error"] = *rep.internal_error;
        Json suites = Json::array();
        for (const auto& s : rep.suites)
            suites.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", s.checks},
                              {"failures", s.failures}, {"skipped", s.skipped},
                              {"messages", s.messages}});
        doc["suites"] = suites;
        write_json(out, doc);
    } else {
        out << "verify " << rep.config << "\n";
        if (rep.internal_error)
            out << "  INTERNAL ERROR " << *rep.internal_error << "\n";
        for (const auto& s : rep.suites) {
            out << "  " << (s.passed() ? "PASS " : "FAIL ") << s.name << ": " << s.checks << " checks";
            if (s.failures)
                out << ", " << s.failures << " failures";
            if (s.skipped)
                out << ", " << s.skipped << " skipped";
            std::ostringstream t;
            t.setf(std::ios::fixed);
            t.precision(2);
            t << s.seconds;
            out << " (" << t.str() << "s)\n";
            for (const auto& m : s.messages)
                out << "      " << m << "\n";
        }
        out << (rep.passed() ? "all suites passed" : "verification FAILED") << "\n";
    }
    if (rep.internal_error)
        return kExitInternal;
    return rep.passed() ? kExitOk : kExitVerification;
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& s)
{
    auto x = s.find_first_of("xX");
    try {
        if (x == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t used = 0;
        std::size_t r = std::stoul(s.substr(0, x), &used);
        if (used != x)
            throw std::invalid_argument(s);
        std::size_t n = std::stoul(s.substr(x + 1), &used);
        if (used != s.size() - x - 1)
            throw std::invalid_argument(s);
        if (r == 0 || r > kMaxVars || n < r)
            throw ValidationError("--random needs 1 <= R <= " + std::to_string(kMaxVars) + " and N >= R");
        return {r, n};
    } catch (const std::logic_error&) {
        throw ValidationError("--random expects RxN, got '" + s + "'");
    }
}

} // namespace

VectorConfig parse_config_json(std::string_view text, const std::string& fallback_name)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vectors"))
        throw ValidationError("expected an object with a \"vectors\" array");
    std::string name = fallback_name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw ValidationError("\"name\" must be a string");
        name = j["name"].get<std::string>();
    }
    const Json& vs = j["vectors"];
    if (!vs.is_array())
        throw ValidationError("\"vectors\" must be an array of integer arrays");
    IntMatrix rows;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i].is_array())
            throw ValidationError("vector " + std::to_string(i + 1) + " is not an array");
        IntVec row;
        for (const auto& x : vs[i]) {
            if (!x.is_number_integer())
                throw ValidationError("vector " + std::to_string(i + 1) + " has a non-integer entry " + x.dump());
            row.push_back(x.get<long>());
        }
        rows.push_back(std::move(row));
    }
    return validate_config(rows, name);
}

VectorConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string stem = path.substr(path.find_last_of('/') + 1);
    return parse_config_json(buf.str(), stem.substr(0, stem.rfind('.')));
}

IntVec parse_point(std::string_view text)
{
    IntVec out;
    std::string s(text);
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw ValidationError("empty coordinate in point '" + s + "'");
        item = item.substr(b, e - b + 1);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != item.size())
            throw ValidationError("point coordinates must be integers, got '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ValidationError("empty point");
    return out;
}

VectorConfig load_config(const RunConfig& run)
{
    int sources = (run.preset ? 1 : 0) + (run.input ? 1 : 0) + (run.random ? 1 : 0);
    if (sources != 1)
        throw ValidationError("give exactly one of --preset, --input, --random");
    if (run.preset)
        return preset(*run.preset);
    if (run.input)
        return load_config_file(*run.input);
    auto [r, n] = parse_shape(*run.random);
    return random_config(r, n, run.seed);
}

int execute(const RunConfig& run, std::ostream& out, std::ostream& err)
{
    try {
        VectorConfig cfg = load_config(run);
        if (run.command == "solve")
            return cmd_solve(run, cfg, out);
        if (run.command == "chambers")
            return cmd_chambers(run, cfg, out);
        if (run.command == "eval")
            return cmd_eval(run, cfg, out, true);
        if (run.command == "count")
            return cmd_eval(run, cfg, out, false);
        if (run.command == "verify")
            return cmd_verify(run, cfg, out);
        throw ValidationError("unknown command: " + run.command);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig run;
    CLI::App app{"Chamber decomposition, volume polynomials and partition functions of vector configurations",
                 "chambercross"};
    app.add_option("command", run.command, "solve | chambers | eval | count | verify")
        ->required()
        ->check(CLI::IsMember({"solve", "chambers", "eval", "count", "verify"}));
    app.add_option("--preset", run.preset, "root system: A1, A2, ..., B2, B3, ...");
    app.add_option("--input", run.input, "JSON file {\"name\": str, \"vectors\": [[int]]}");
    app.add_option("--random", run.random, "seeded random pointed configuration RxN");
    std::vector<std::string> points;
    app.add_option("--point", points, "evaluation point a1,a2,... (repeatable)");
    std::string format = "json";
    app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--budget", run.budget, "closure points per chamber for verify");
    app.add_option("--seed", run.seed, "seed for randomized suites and --random")->envname("CHAMBERCROSS_SEED");
    app.add_flag("--debug-truncation", run.debug_truncation, "recompute every residue at a higher order");
    app.add_flag("--check-all-jumps", run.check_all_jumps, "verify non-tree jumps in wall recursions too");
    app.add_flag("--shift-form", run.shift_form, "print quasi-polynomials as character sums");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    run.format = format == "text" ? OutputFormat::text : OutputFormat::json;
    try {
        for (const auto& p : points)
            run.points.push_back(parse_point(p));
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return execute(run, out, err);
}

} // namespace chambercross
