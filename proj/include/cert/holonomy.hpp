#pragma once

#include "cert/gluing.hpp"
#include "cert/matrix2.hpp"
#include "cert/word.hpp"

#include <functional>

namespace cert {

struct PathNotClosed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PrecisionCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LiftSignsUnsolvable : std::runtime_error {
    LiftSignsUnsolvable() : std::runtime_error("no choice of generator signs makes every relator +I") {}
};

// leave tet `tet` through its face `face`
struct FaceCrossing {
    int tet, face;
    bool operator==(const FaceCrossing&) const = default;
};
using FacePath = std::vector<FaceCrossing>;

// Presentation of pi_1 read off the face-pairing graph: a spanning tree of
// the dual graph is collapsed, every other face is a generator oriented from
// its first side to its second, and every edge class gives a relator. Each
// generator also comes with a closed path based at tet 0.
struct DualSpinePresentation {
    Presentation presentation;
    std::vector<FacePath> paths;
    std::vector<int> generator_faces;
    // words of the peripheral meridian and longitude (ideal triangulations
    // with peripheral data only)
    std::optional<Word> meridian, longitude;
};

DualSpinePresentation dual_spine_presentation(const Triangulation& T, std::optional<Slope> filling = std::nullopt);
// word of a closed face path in the dual-spine generators
Word path_word(const Triangulation& T, const FacePath& path);

enum class HolonomyProvenance { ingested, developed };

struct ApproxHolonomy {
    std::vector<std::string> generators;
    std::vector<Matrix2> images;
    HolonomyProvenance provenance = HolonomyProvenance::ingested;
    mpfr_prec_t precision = 0;
    // optional presentation carried alongside (ingested files may include it)
    std::vector<Word> relators;
    Presentation presentation() const { return {generators, relators}; }
};

ApproxHolonomy holonomy_from_json(const json& j, std::optional<mpfr_prec_t> prec = std::nullopt);
json holonomy_to_json(const ApproxHolonomy& rho);
ApproxHolonomy at_precision(const ApproxHolonomy& rho, mpfr_prec_t prec);

// Moebius image of a closed face path, scaled to determinant one.
Matrix2 develop_path(const ShapeBox& shapes, const Triangulation& T, const FacePath& path);

ApproxHolonomy develop_holonomy(const ShapeBox& shapes, const Triangulation& T, const std::vector<FacePath>& paths,
                                const std::vector<std::string>& names);
ApproxHolonomy develop_holonomy(const CertifiedStructure& s, const Triangulation& T, const DualSpinePresentation& d);

// Re-signs generator images so that every relator evaluates to a box
// containing +I and excluding -I. Returns the flips applied (+1 or -1).
std::vector<int> choose_lift_signs(ApproxHolonomy& rho, const Presentation& pres);

Matrix2 evaluate_word(const ApproxHolonomy& rho, const Word& w);

struct ValidationReport {
    std::vector<bool> relator_ok;  // box meets +I or -I
    bool relators_consistent = true;
    int first = 0, second = 1;
    Box commutator_trace;
    bool jorgensen_ok = false;  // 2 is not in tr of the commutator
    bool passed() const { return relators_consistent && jorgensen_ok; }
};

ValidationReport validate_holonomy(const ApproxHolonomy& rho, const Presentation& pres, int first = 0, int second = 1);

// first generator pair (i < j) whose commutator trace box excludes 2
std::optional<std::pair<int, int>> find_jorgensen_pair(const ApproxHolonomy& rho);

enum class WordVerdict { proven_trivial, proven_nontrivial, unknown };
std::string to_string(WordVerdict v);

// Jorgensen quantity |tr^2 W - 4| + |tr [S, W] - 2| as a real interval
Interval jorgensen_quantity(const Matrix2& s, const Matrix2& w);

WordVerdict decide_word(const ApproxHolonomy& rho, const Word& w, int first = 0, int second = 1);

using HolonomyAt = std::function<ApproxHolonomy(mpfr_prec_t)>;

struct LadderVerdict {
    WordVerdict verdict = WordVerdict::unknown;
    mpfr_prec_t precision = 0;  // precision that settled the word, or the last one tried
};

LadderVerdict decide_word_ladder(const HolonomyAt& rho_at, const Word& w, const std::vector<mpfr_prec_t>& ladder,
                                 int first = 0, int second = 1);

const std::vector<mpfr_prec_t>& default_ladder();

}  // namespace cert
