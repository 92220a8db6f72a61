#pragma once

#include "cert/matrix2.hpp"

#include <json.hpp>

namespace cert {

using json = nlohmann::json;

// Intervals are ["lo", "hi"] exact decimal strings; boxes {"re": .., "im": ..};
// matrices [[box, box], [box, box]]. A bare number string "x" is accepted as
// the degenerate interval [x, x].
Interval interval_from_json(const json& j, mpfr_prec_t prec);
json interval_to_json(const Interval& x);
Box box_from_json(const json& j, mpfr_prec_t prec);
json box_to_json(const Box& b);
Matrix2 matrix_from_json(const json& j, mpfr_prec_t prec);
json matrix_to_json(const Matrix2& m);

}  // namespace cert
