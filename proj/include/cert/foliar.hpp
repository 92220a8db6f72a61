#pragma once

#include "cert/triangulation.hpp"
#include "cert/zlattice.hpp"

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <vector>

namespace cert {

struct NotAcyclic : std::runtime_error {
    NotAcyclic() : std::runtime_error("edge orientation has a directed face cycle") {}
};
struct SinkEdgePresent : std::runtime_error {
    SinkEdgePresent() : std::runtime_error("edge orientation has a sink edge") {}
};
struct MissingPeripheralData : std::runtime_error {
    MissingPeripheralData() : std::runtime_error("triangulation has no peripheral curve data") {}
};
struct ArcsDoNotClose : std::logic_error {
    ArcsDoNotClose() : std::logic_error("annulus arcs do not close up") {}
};
struct NotFoliarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonIntegralCochain : std::logic_error {
    NonIntegralCochain() : std::logic_error("mixed count is odd; cochain is not integral") {}
};
struct InvalidSite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotRationalHomologySolidTorus : std::runtime_error {
    NotRationalHomologySolidTorus() : std::runtime_error("manifold is not a rational homology solid torus") {}
};

// forward[e] is true when edge class e points along its reference direction
struct EdgeOrientation {
    std::vector<bool> forward;
    bool operator==(const EdgeOrientation&) const = default;
    auto operator<=>(const EdgeOrientation&) const = default;
};

EdgeOrientation orientation_from_json(const json& j, int edge_count);
json orientation_to_json(const EdgeOrientation& mu);

// true when mu directs slot (i, j) of tet from i to j
bool points_from(const Triangulation& T, const EdgeOrientation& mu, int tet, int i, int j);

// A literal is +(v+1) or -(v+1); a clause is satisfied when any literal holds.
using Clause = std::array<int, 3>;
std::vector<Clause> acyclic_cnf(const Triangulation& T);

// Streams every acyclic orientation; the callback returns false to stop.
// Returns the number of orientations emitted.
size_t enumerate_acyclic(const Triangulation& T, const std::function<bool(const EdgeOrientation&)>& emit);
std::vector<EdgeOrientation> all_acyclic(const Triangulation& T);
bool is_acyclic(const Triangulation& T, const EdgeOrientation& mu);

enum class EdgeRole { very_long, mixed, short_bottom, short_top, short_incompatible };

struct EdgeClassification {
    std::vector<std::array<int, 4>> order;  // order[t][k] = vertex of rank k
    std::vector<std::array<EdgeRole, 6>> roles;
    std::vector<int> mixed;  // per edge class
    std::vector<bool> sink;  // per edge class
    bool has_sink() const;
};

EdgeClassification classify_edges(const Triangulation& T, const EdgeOrientation& mu);

struct FaceRelation {
    std::vector<int> face_class;  // per quotient face
    int class_count = 0;
};

FaceRelation face_relation(const Triangulation& T, const EdgeClassification& c);

enum class FoliarFailure { none, not_acyclic, sink_edge, short_loops, not_strongly_connected, face_classes };
const char* to_string(FoliarFailure f);

struct FoliarVerdict {
    FoliarFailure failure = FoliarFailure::none;
    int face_classes = 0;
    bool foliar() const { return failure == FoliarFailure::none; }
};

FoliarVerdict is_foliar(const Triangulation& T, const EdgeOrientation& mu);

// 0-2 move across the two faces of `tet` that meet along slot (i, j).
Triangulation pillow_move(const Triangulation& T, int tet, int i, int j);
// the same move at the very-long edge of `tet` under mu
Triangulation pillow_move(const Triangulation& T, int tet, const EdgeOrientation& mu);

// Acyclic orientations of P that agree with mu on every slot of T's tets;
// P must keep T's tetrahedra as its first ones (true for pillow_move).
size_t count_extensions(const Triangulation& T, const EdgeOrientation& mu, const Triangulation& P);

// Sign conventions for the dual coboundary: a flip of -1 reverses a face's
// co-orientation or an edge's walk direction.
struct CoboundaryConvention {
    std::vector<int> face_flip;
    std::vector<int> walk_flip;
    static CoboundaryConvention standard(const Triangulation& T);
};

// Rows = edge classes, columns = quotient faces: signed crossings of the
// walk around each edge, turning right-handedly about the direction given
// by mu (or by the reference direction when mu is absent).
IntMatrix dual_coboundary(const Triangulation& T, const EdgeOrientation* mu, const CoboundaryConvention& conv);

struct EulerClassResult {
    std::vector<mpq_class> cochain;  // per edge class, in the convention used
    IntMatrix coboundary;
    bool is_zero = false;
    std::optional<IntVector> witness;  // coboundary * witness == cochain
};

EulerClassResult euler_class(const Triangulation& T, const EdgeOrientation& mu);
EulerClassResult euler_class(const Triangulation& T, const EdgeOrientation& mu, const CoboundaryConvention& conv);

struct Slope {
    long p = 0, q = 0;
    bool operator==(const Slope&) const = default;
};
// primitive representative with p > 0, or p == 0 and q > 0
Slope normalize_slope(long p, long q);

// Algebraic intersection of two curves given by corner weights on the cusp.
long algebraic_intersection(const Triangulation& T, const CornerWeights& a, const CornerWeights& b);
// Peripheral class (x, y) of a cusp curve: x meridians plus y longitudes.
std::array<long, 2> peripheral_class(const Triangulation& T, const CornerWeights& curve);

struct AnnulusStep {
    int tet;
    int edge;  // compatibly short slot
    int entry_face, exit_face;
};

struct VerticalAnnulus {
    std::vector<AnnulusStep> steps;
    CornerWeights curve;
    std::array<long, 2> homology{0, 0};
};

struct AnnuliResult {
    std::vector<VerticalAnnulus> annuli;
    bool persistent = false;
    std::optional<Slope> degeneracy;
};

// all classes nonzero and pairwise parallel
bool persistent_classes(const std::vector<std::array<long, 2>>& classes);

AnnuliResult cusp_annuli(const Triangulation& T, const EdgeOrientation& mu);

// Net crossings of each quotient face by a cusp curve.
IntVector face_crossings(const Triangulation& T, const CornerWeights& curve);

Slope homological_longitude(const Triangulation& T);

}  // namespace cert
