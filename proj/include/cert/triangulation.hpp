#pragma once

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cert {

using json = nlohmann::json;

// perm[k] = image of vertex k
using Perm4 = std::array<int, 4>;

int parity(const Perm4& p);  // +1 even, -1 odd
int parity4(int a, int b, int c, int d);
Perm4 inverse(const Perm4& p);
Perm4 compose(const Perm4& outer, const Perm4& inner);  // outer after inner

struct TriangulationError : std::runtime_error {
    enum class Kind { malformed, not_closed_or_ideal, non_orientable, edge_reversed, missing_peripheral };
    Kind kind;
    TriangulationError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct Gluing {
    int tet = -1;
    Perm4 perm{0, 1, 2, 3};
};

// Net signed number of curve strands entering cusp triangle (tet, v) through
// its side in face f; indexed [tet][v][f].
using CornerWeights = std::vector<std::array<std::array<int, 4>, 4>>;

struct Peripheral {
    CornerWeights meridian;
    CornerWeights longitude;
};

// Edge slots of a tetrahedron in a fixed order.
constexpr std::array<std::array<int, 2>, 6> edge_vertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int edge_index(int i, int j);

struct EdgeSlot {
    int tet;
    int edge;  // 0..5
};

struct FaceSide {
    int tet;
    int face;
    auto operator<=>(const FaceSide&) const = default;
};

enum class TriangulationKind { closed, ideal };

class Triangulation {
public:
    // raw data
    int size() const { return static_cast<int>(gluings_.size()); }
    const Gluing& gluing(int tet, int face) const { return gluings_[tet][face]; }
    const std::optional<Peripheral>& peripheral() const { return peripheral_; }

    // derived data (filled by analyze_triangulation)
    TriangulationKind kind() const { return kind_; }
    int edge_count() const { return static_cast<int>(edge_slots_.size()); }
    int vertex_count() const { return vertex_classes_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int tet_sign(int t) const { return tet_sign_[t]; }
    int edge_class(int tet, int edge) const { return edge_class_[tet][edge]; }
    // +1 when the slot's natural direction (low vertex -> high vertex) agrees
    // with the reference direction of its class
    int edge_slot_sign(int tet, int edge) const { return edge_sign_[tet][edge]; }
    const std::vector<EdgeSlot>& slots_of_edge(int e) const { return edge_slots_[e]; }
    int vertex_class(int tet, int v) const { return vertex_class_[tet][v]; }
    int face_id(int tet, int face) const { return face_id_[tet][face]; }
    // the two sides of a quotient face; sides[0] is the lexicographically smaller
    const std::array<FaceSide, 2>& face_sides(int f) const { return faces_[f]; }
    int link_euler_characteristic(int vertex_class) const { return link_chi_[vertex_class]; }
    // endpoints (vertex classes) of an edge class, tail then head in the
    // reference direction
    std::array<int, 2> edge_endpoints(int e) const;

    friend Triangulation analyze_triangulation(std::vector<std::array<Gluing, 4>> gluings,
                                               std::optional<Peripheral> peripheral);

private:
    std::vector<std::array<Gluing, 4>> gluings_;
    std::optional<Peripheral> peripheral_;
    TriangulationKind kind_ = TriangulationKind::closed;
    std::vector<int> tet_sign_;
    std::vector<std::array<int, 6>> edge_class_, edge_sign_;
    std::vector<std::vector<EdgeSlot>> edge_slots_;
    std::vector<std::array<int, 4>> vertex_class_;
    int vertex_classes_ = 0;
    std::vector<std::array<int, 4>> face_id_;
    std::vector<std::array<FaceSide, 2>> faces_;
    std::vector<int> link_chi_;
};

// Validates the gluing table and computes all derived data.
Triangulation analyze_triangulation(std::vector<std::array<Gluing, 4>> gluings,
                                    std::optional<Peripheral> peripheral = std::nullopt);

Triangulation triangulation_from_json(const json& j);
json triangulation_to_json(const Triangulation& t);

}  // namespace cert
