#pragma once

#include "cert/holonomy.hpp"
#include "cert/zlattice.hpp"

namespace cert {

struct BranchRayAmbiguity : std::domain_error {
    using std::domain_error::domain_error;
};
struct BranchCutUncertain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CentralValueAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of the universal cover of SL(2,R): a real matrix box together with
// an interval for its lifted rotation coordinate, (d - ic)/|(c, d)| = e^{it}.
struct GtilElement {
    Matrix2 g;
    Interval t;
};

GtilElement gtil_identity(mpfr_prec_t prec);
// the rotation lift with angle t (matrix [[cos, sin], [-sin, cos]])
GtilElement gtil_rotation(const Interval& t);
// the upper-triangular element taking i to x + iy (y > 0); its t is 0
GtilElement gtil_translation(const Interval& x, const Interval& y);
// multiply by the central element of angle 2*pi*k
GtilElement gtil_shift(const GtilElement& x, long k);

// t taken in (-pi, pi]; the closed endpoint pi is allowed
GtilElement lift_element(const Matrix2& g);
GtilElement gtil_mul(const GtilElement& x, const GtilElement& y);
GtilElement gtil_inverse(const GtilElement& x);

// the real parts of a matrix whose entries are known real
Matrix2 real_part(const Matrix2& m);

struct ObstructionCocycle {
    Presentation presentation;
    std::vector<long> m;         // per relator
    std::vector<Interval> t;     // accumulated angles
};

// relators are evaluated strictly left to right
ObstructionCocycle relator_obstruction(const std::vector<GtilElement>& lifts, const Presentation& pres);
// generators lifted with lift_element
ObstructionCocycle relator_obstruction(const ApproxHolonomy& rho, const Presentation& pres);

// rows = relators, columns = generators, entries = exponent sums
IntMatrix exponent_matrix(const Presentation& pres);
// exact check that the 1-cochain alpha has coboundary m
bool coboundary_holds(const Presentation& pres, const std::vector<long>& m, const IntVector& alpha);

enum class LiftVerdict { exists, obstructed, unknown };
std::string to_string(LiftVerdict v);

struct LiftResult {
    LiftVerdict verdict = LiftVerdict::unknown;
    std::optional<ObstructionCocycle> cocycle;
    IntVector alpha;     // when the lift exists
    std::string reason;  // when unknown
};

LiftResult lift_representation(const std::vector<GtilElement>& lifts, const Presentation& pres);
LiftResult lift_representation(const ApproxHolonomy& rho, const Presentation& pres);
// re-evaluates once at twice the precision before giving up
LiftResult lift_representation(const HolonomyAt& rho_at, const Presentation& pres, mpfr_prec_t prec);

json lift_result_to_json(const LiftResult& r);

// ---- end-to-end orderability certificate ----

struct OrderabilityFailure : std::runtime_error {
    std::string stage;
    OrderabilityFailure(std::string st, const std::string& what) : std::runtime_error(st + ": " + what), stage(std::move(st)) {}
};

// Builds the certificate for the filled manifold from a certified real
// structure on the filled gluing system. Throws OrderabilityFailure naming
// the stage that failed.
json certify_orderable(const Triangulation& T, const Slope& filling, const CertifiedRealStructure& s);

struct CertificateCheck {
    bool ok = false;
    std::string stage;  // first failing stage
    std::string detail;
};

// Re-verifies every stage from the stored data; nothing is searched for.
CertificateCheck verify_orderable(const json& cert);

}  // namespace cert
