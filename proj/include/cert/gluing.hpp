#pragma once

#include "cert/complex_box.hpp"
#include "cert/foliar.hpp"
#include "cert/triangulation.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cert {

struct NotIdealTriangulation : std::invalid_argument {
    NotIdealTriangulation() : std::invalid_argument("gluing equations need a one-cusped ideal triangulation") {}
};
struct NoContraction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularIntervalJacobian : std::runtime_error {
    SingularIntervalJacobian() : std::runtime_error("interval Jacobian could not be inverted") {}
};
struct NonPositiveImaginaryPart : std::runtime_error {
    int index;
    explicit NonPositiveImaginaryPart(int i)
        : std::runtime_error("shape " + std::to_string(i) + " does not have positive imaginary part"), index(i) {}
};
struct HyperbolicityWitnessFailed : std::runtime_error {
    HyperbolicityWitnessFailed() : std::runtime_error("trace squared of the witness is not provably above 4") {}
};
struct DegenerateShape : std::runtime_error {
    int index;
    explicit DegenerateShape(int i)
        : std::runtime_error("shape " + std::to_string(i) + " may equal 0 or 1"), index(i) {}
};

enum class EquationKind { edge, cusp, filling };
enum class GluingForm { logarithmic, rectangular };

// sum_i a_i log z_i + b_i log(1 - z_i) = c * pi * i     (logarithmic)
// prod_i z_i^a_i (1 - z_i)^b_i = (-1)^c                  (rectangular)
struct GluingEquation {
    std::vector<long> a, b;
    long c = 0;
    EquationKind kind = EquationKind::edge;
};

// log H(curve) = sum a_i log z_i + b_i log(1 - z_i) + c * pi * i
struct PeripheralRow {
    std::vector<long> a, b;
    long c = 0;
};

struct GluingSystem {
    int n = 0;
    // filled: n edge equations then the filling equation; complete: n - 1 edge
    // equations then the meridian cusp equation
    std::vector<GluingEquation> equations;
    GluingForm form = GluingForm::logarithmic;
    std::optional<Slope> filling;
    PeripheralRow meridian, longitude;
};

// Counts of corners of type z, z', z'' (per tet) in an edge or curve, turned
// into exponents of z and 1 - z plus a multiple of pi * i.
PeripheralRow row_from_corner_counts(const std::vector<std::array<long, 3>>& counts);

GluingSystem build_gluing_system(const Triangulation& T, std::optional<Slope> filling,
                                 GluingForm form = GluingForm::logarithmic);

using ShapeBox = std::vector<Box>;

ShapeBox shapes_from_json(const json& j, mpfr_prec_t prec);
json shapes_to_json(const ShapeBox& s);

// value of equation minus its target; contains 0 at a solution
Box residual(const GluingSystem& sys, const GluingEquation& eq, const ShapeBox& z);

struct KrawczykResult {
    ShapeBox box;         // K(box) lies in the interior of box
    ShapeBox contracted;  // K(box)
    int newton_steps = 0;
};

// Certifies a unique solution of the square system (for a filled system, all
// edge equations but the last, plus the filling equation) near `initial`. Real mode is used when the
// system is rectangular and every seed is real.
KrawczykResult krawczyk_certify(const GluingSystem& sys, const ShapeBox& initial, mpfr_prec_t prec);

// Replays the inclusion test on a stored box.
bool krawczyk_contracts(const GluingSystem& sys, const ShapeBox& box);
// K(box) when it lies inside box, else nullopt
std::optional<ShapeBox> krawczyk_image(const GluingSystem& sys, const ShapeBox& box);

struct CertifiedStructure {
    ShapeBox shapes;
};

CertifiedStructure certify_hyperbolic_structure(const GluingSystem& sys, const ShapeBox& box);

// rectangular cusp holonomy of a peripheral class p*meridian + q*longitude
Box peripheral_holonomy(const GluingSystem& sys, const Slope& slope, const ShapeBox& z);

using TraceHook = std::function<Interval(const ShapeBox&, const Slope&)>;

struct CertifiedRealStructure {
    ShapeBox shapes;
    Slope witness;
    Interval trace_squared;
};

// throws HyperbolicityWitnessFailed unless tr2 lies above 4
void check_hyperbolicity_witness(const Interval& tr2);

CertifiedRealStructure certify_real_structure(const GluingSystem& sys, const ShapeBox& seed, const Slope& witness,
                                              mpfr_prec_t prec, const TraceHook& hook = nullptr);

}  // namespace cert
