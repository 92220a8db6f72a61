#pragma once

#include "cert/foliar.hpp"
#include "cert/gtil.hpp"
#include "cert/order_tree.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cert::cli {

enum Exit : int { exit_proved = 0, exit_refuted = 1, exit_unknown = 2, exit_input = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Ladder = std::vector<mpfr_prec_t>;
using GeneratorPair = std::pair<int, int>;

// Result of one job: an exit code, a report for the user, and a
// self-contained certificate when something was proved.
struct Outcome {
    int code = exit_unknown;
    json report;
    std::optional<json> certificate;
};

// "100,200,400"; throws InputError unless positive and strictly increasing
Ladder parse_ladder(const std::string& text);
Slope parse_slope(const std::string& text);
json read_json_file(const std::string& path);

Outcome analyze_job(const json& tri);

struct ShapesInput {
    json triangulation;
    std::optional<json> seed;  // falls back to the triangulation's own "shapes"
    std::optional<Slope> filling;
    std::optional<Slope> witness;  // present: real structure
};
Outcome certify_shapes_job(const ShapesInput& in, const Ladder& ladder);

Outcome word_job(const json& holonomy, const std::string& word, std::optional<GeneratorPair> pair,
                 const Ladder& ladder);
Outcome tree_job(const json& tree, const json& holonomy, std::optional<GeneratorPair> pair, const Ladder& ladder);
// on success *tree_out (when given) receives the tree found
Outcome find_tree_job(const json& holonomy, const FindParams& params, std::optional<GeneratorPair> pair,
                      const Ladder& ladder, json* tree_out = nullptr);

Outcome foliar_job(const json& tri);
Outcome euler_job(const json& tri, const std::optional<json>& orientation);
Outcome persistent_job(const json& tri, const std::optional<json>& orientation);

Outcome lift_holonomy_job(const json& holonomy, const Ladder& ladder);
// certify the real structure, then the orderability certificate
Outcome orderability_job(const ShapesInput& in, const Ladder& ladder);

// Replays a certificate of any kind; no searches are repeated.
CertificateCheck verify_certificate(const json& cert);

// top-level fields of a certificate kind that carry the proof data
const std::vector<std::string>& witness_fields(const std::string& kind);

// Parses a command line (program name excluded) and runs it. Throws on
// input errors.
Outcome execute(const std::vector<std::string>& args);

// execute plus reporting: the report goes to out as one JSON line,
// diagnostics to err; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cert::cli
