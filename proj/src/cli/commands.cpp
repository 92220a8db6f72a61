#include "common.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

namespace cert::cli {

using namespace detail;
namespace fs = std::filesystem;

namespace {

struct HelpRequested {
    std::string text;
};

struct Options {
    std::optional<long> precision;
    std::string ladder_text;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string verify_only, out;

    std::string input, holonomy, shapes, orientation, word, pair, filling, witness, tree_out;
    FindParams find;
};

// --ladder wins; otherwise --precision (or CERT_PRECISION) pins a single
// rung; otherwise the default ladder
Ladder effective_ladder(const Options& o) {
    if (!o.ladder_text.empty()) return parse_ladder(o.ladder_text);
    std::optional<long> p = o.precision;
    if (!p) {
        if (const char* env = std::getenv("CERT_PRECISION"); env && *env) {
            try {
                p = std::stol(env);
            } catch (const std::exception&) {
                throw InputError("CERT_PRECISION is not an integer");
            }
        }
    }
    if (p) {
        Ladder l{*p};
        check_ladder(l);
        return l;
    }
    return default_ladder();
}

std::optional<GeneratorPair> pair_option(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Slope s = parse_slope(text);
    return GeneratorPair{static_cast<int>(s.p), static_cast<int>(s.q)};
}

std::optional<Slope> slope_option(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_slope(text);
}

std::optional<json> file_option(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return read_json_file(path);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << j.dump(1) << "\n";
}

// ---- batch ----

const std::set<std::string> path_flags{"--holonomy", "--shapes", "--orientation", "--out", "--tree-out", "--verify-only"};
const std::set<std::string> output_flags{"--out", "--tree-out"};
const std::set<std::string> value_flags{"--word",   "--pair",         "--filling",    "--witness", "--precision",
                                        "--ladder", "--jobs",         "--radius",     "--max-elements",
                                        "--node-limit"};

struct BatchJob {
    std::vector<std::string> args;
    std::vector<std::string> inputs;
};

// Resolves relative paths against the manifest directory and collects inputs.
BatchJob prepare_job(const json& entry, const fs::path& base, size_t index) {
    const json& a = entry.is_object() ? entry.at("args") : entry;
    if (!a.is_array() || a.empty()) throw InputError("job " + std::to_string(index) + " has no arguments");
    BatchJob job;
    for (const json& x : a) job.args.push_back(x.get<std::string>());
    if (job.args.front() == "batch") throw InputError("job " + std::to_string(index) + ": batch jobs cannot nest");
    auto resolve = [&](std::string& p, bool input) {
        fs::path q(p);
        if (q.is_relative()) p = (base / q).string();
        if (input) job.inputs.push_back(p);
    };
    for (size_t i = 1; i < job.args.size(); ++i) {
        const std::string& s = job.args[i];
        if (path_flags.count(s) && i + 1 < job.args.size()) {
            resolve(job.args[i + 1], !output_flags.count(s));
            ++i;
        } else if (value_flags.count(s)) {
            ++i;
        } else if (s.rfind("-", 0) != 0) {
            resolve(job.args[i], true);
        }
    }
    return job;
}

Outcome run_batch(const std::string& manifest_path, const Options& o) {
    if (o.out.empty()) throw InputError("batch needs --out for its JSON-lines results");
    json manifest = read_json_file(manifest_path);
    const json& specs = manifest.is_object() ? manifest.at("jobs") : manifest;
    if (!specs.is_array()) throw InputError("manifest must list jobs");
    fs::path base = fs::path(manifest_path).parent_path();
    std::vector<BatchJob> jobs;
    for (size_t i = 0; i < specs.size(); ++i) jobs.push_back(prepare_job(specs[i], base, i));
    // every input must exist before any work starts
    for (size_t i = 0; i < jobs.size(); ++i)
        for (const std::string& p : jobs[i].inputs)
            if (!fs::exists(p)) throw InputError("job " + std::to_string(i) + ": missing input " + p);

    std::ofstream sink(o.out);
    if (!sink) throw InputError("cannot write " + o.out);

    std::vector<std::optional<json>> results(jobs.size());
    std::mutex m;
    std::condition_variable ready;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < jobs.size();) {
            json line = {{"job", i}, {"args", jobs[i].args}};
            try {
                Outcome r = execute(jobs[i].args);
                line["exit"] = r.code;
                line["report"] = std::move(r.report);
            } catch (const HelpRequested&) {
                line["exit"] = static_cast<int>(exit_input);
                line["error"] = "help requested inside a batch job";
            } catch (const std::exception& e) {
                line["exit"] = static_cast<int>(exit_input);
                line["error"] = e.what();
            }
            std::lock_guard<std::mutex> lock(m);
            results[i] = std::move(line);
            ready.notify_one();
        }
    };
    size_t workers = std::min<size_t>(std::max(1u, o.jobs), std::max<size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);

    // single writer, in manifest order
    std::map<int, long> counts;
    int worst = exit_proved;
    for (size_t i = 0; i < jobs.size(); ++i) {
        json line;
        {
            std::unique_lock<std::mutex> lock(m);
            ready.wait(lock, [&] { return results[i].has_value(); });
            line = std::move(*results[i]);
            results[i].reset();
        }
        int code = line["exit"].get<int>();
        ++counts[code];
        worst = std::max(worst, code);
        sink << line.dump() << "\n";
        sink.flush();
    }
    for (std::thread& t : pool) t.join();

    Outcome out;
    out.code = worst;
    json by_code = json::object();
    for (auto [code, n] : counts) by_code[std::to_string(code)] = n;
    out.report = {{"task", "batch"}, {"jobs", jobs.size()}, {"exit_counts", by_code}, {"results", o.out}};
    return out;
}

Outcome verify_file(const std::string& path) {
    json c = read_json_file(path);
    CertificateCheck chk = verify_certificate(c);
    Outcome o;
    o.code = chk.ok ? exit_proved : exit_refuted;
    o.report = {{"task", "verify"}, {"kind", c.is_object() ? c.value("kind", "") : ""}, {"ok", chk.ok}};
    if (!chk.ok) {
        o.report["stage"] = chk.stage;
        o.report["detail"] = chk.detail;
    }
    return o;
}

}  // namespace

Outcome execute(const std::vector<std::string>& args) {
    CLI::App app{"Interval certificates for orderability, foliations and group-theoretic claims", "ordcert"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    Options o;
    app.add_option("--precision", o.precision, "single working precision in bits (default: env CERT_PRECISION)");
    app.add_option("--ladder", o.ladder_text, "strictly increasing precisions, e.g. 100,200,400,1000");
    app.add_option("--jobs", o.jobs, "worker threads for batch mode")->check(CLI::PositiveNumber);
    app.add_option("--verify-only", o.verify_only, "replay a certificate and exit");
    app.add_option("--out", o.out, "certificate output (batch: JSON-lines results)");

    auto* analyze = app.add_subcommand("analyze-tri", "summarize a triangulation file");
    analyze->add_option("triangulation", o.input)->required();

    auto* shapes = app.add_subcommand("certify-shapes", "certify a solution of the gluing equations");
    shapes->add_option("triangulation", o.input)->required();
    shapes->add_option("--shapes", o.shapes, "seed shapes (default: the triangulation's own)");
    shapes->add_option("--filling", o.filling, "Dehn filling p,q");
    shapes->add_option("--witness", o.witness, "peripheral slope p,q whose trace certifies a real structure");

    auto* word = app.add_subcommand("word", "decide whether a word is trivial");
    word->add_option("--holonomy", o.holonomy)->required();
    word->add_option("--word", o.word)->required();
    word->add_option("--pair", o.pair, "generator pair i,j for the Jorgensen test");

    auto* vtree = app.add_subcommand("verify-tree", "check a nonordering tree");
    vtree->add_option("tree", o.input)->required();
    vtree->add_option("--holonomy", o.holonomy)->required();
    vtree->add_option("--pair", o.pair);

    auto* ftree = app.add_subcommand("find-tree", "search for a nonordering tree, then check it");
    ftree->add_option("--holonomy", o.holonomy)->required();
    ftree->add_option("--pair", o.pair);
    ftree->add_option("--radius", o.find.radius)->check(CLI::PositiveNumber);
    ftree->add_option("--max-elements", o.find.max_elements)->check(CLI::PositiveNumber);
    ftree->add_option("--node-limit", o.find.node_limit)->check(CLI::PositiveNumber);
    ftree->add_option("--tree-out", o.tree_out, "write the tree found");

    auto* foliar = app.add_subcommand("foliar-search", "find a foliar edge orientation");
    foliar->add_option("triangulation", o.input)->required();

    auto* euler = app.add_subcommand("euler-class", "decide whether the Euler class of a foliar orientation vanishes");
    euler->add_option("triangulation", o.input)->required();
    euler->add_option("--orientation", o.orientation, "orientation file (default: first foliar one)");

    auto* persistent = app.add_subcommand("persistent", "find a persistently foliar orientation");
    persistent->add_option("triangulation", o.input)->required();
    persistent->add_option("--orientation", o.orientation);

    auto* lift = app.add_subcommand("lift-rep", "lift a real representation to the universal cover");
    lift->add_option("triangulation", o.input, "ideal triangulation (with --shapes, --filling, --witness)");
    lift->add_option("--holonomy", o.holonomy, "real holonomy with relators");
    lift->add_option("--shapes", o.shapes);
    lift->add_option("--filling", o.filling);
    lift->add_option("--witness", o.witness);

    auto* batch = app.add_subcommand("batch", "run a manifest of jobs");
    batch->add_option("manifest", o.input)->required();

    auto* verify = app.add_subcommand("verify", "replay a certificate");
    verify->add_option("certificate", o.input)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }

    if (!o.verify_only.empty()) return verify_file(o.verify_only);
    if (app.get_subcommands().empty()) throw InputError("no command given; try --help");
    if (verify->parsed()) return verify_file(o.input);
    if (batch->parsed()) return run_batch(o.input, o);

    Ladder ladder = effective_ladder(o);
    Outcome r;
    if (analyze->parsed()) {
        r = analyze_job(read_json_file(o.input));
    } else if (shapes->parsed()) {
        ShapesInput in{read_json_file(o.input), file_option(o.shapes), slope_option(o.filling), slope_option(o.witness)};
        r = certify_shapes_job(in, ladder);
    } else if (word->parsed()) {
        r = word_job(read_json_file(o.holonomy), o.word, pair_option(o.pair), ladder);
    } else if (vtree->parsed()) {
        json tree = read_json_file(o.input);
        r = tree_job(tree, read_json_file(o.holonomy), pair_option(o.pair), ladder);
    } else if (ftree->parsed()) {
        json found;
        r = find_tree_job(read_json_file(o.holonomy), o.find, pair_option(o.pair), ladder, &found);
        if (!o.tree_out.empty() && !found.is_null()) write_json(o.tree_out, found);
    } else if (foliar->parsed()) {
        r = foliar_job(read_json_file(o.input));
    } else if (euler->parsed()) {
        json tri = read_json_file(o.input);
        r = euler_job(tri, file_option(o.orientation));
    } else if (persistent->parsed()) {
        json tri = read_json_file(o.input);
        r = persistent_job(tri, file_option(o.orientation));
    } else if (lift->parsed()) {
        if (!o.holonomy.empty() && !o.input.empty()) throw InputError("give either a triangulation or --holonomy");
        if (!o.holonomy.empty()) {
            r = lift_holonomy_job(read_json_file(o.holonomy), ladder);
        } else {
            if (o.input.empty()) throw InputError("lift-rep needs a triangulation or --holonomy");
            ShapesInput in{read_json_file(o.input), file_option(o.shapes), slope_option(o.filling),
                           slope_option(o.witness)};
            r = orderability_job(in, ladder);
        }
    }
    if (!o.out.empty()) {
        if (r.certificate) {
            write_json(o.out, *r.certificate);
            r.report["certificate"] = o.out;
        } else {
            r.report["certificate"] = nullptr;
        }
    }
    return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        Outcome r = execute(args);
        out << r.report.dump() << "\n";
        return r.code;
    } catch (const HelpRequested& h) {
        out << h.text;
        return exit_proved;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

}  // namespace cert::cli
