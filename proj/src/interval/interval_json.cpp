#include "cert/interval_json.hpp"

#include <stdexcept>

namespace cert {

namespace {

mpq_class number_of(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    throw std::invalid_argument("interval endpoints must be decimal strings or integers, got " + j.dump());
}

}  // namespace

Interval interval_from_json(const json& j, mpfr_prec_t prec) {
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("interval must have two endpoints");
        return Interval::from_rationals(number_of(j[0]), number_of(j[1]), prec);
    }
    return Interval::from_rational(number_of(j), prec);
}

json interval_to_json(const Interval& x) { return json::array({x.lo().to_decimal(), x.hi().to_decimal()}); }

Box box_from_json(const json& j, mpfr_prec_t prec) {
    if (!j.is_object()) return Box::real(interval_from_json(j, prec));
    Interval re = j.contains("re") ? interval_from_json(j.at("re"), prec) : Interval::from_int(0, prec);
    Interval im = j.contains("im") ? interval_from_json(j.at("im"), prec) : Interval::from_int(0, prec);
    return Box(std::move(re), std::move(im));
}

json box_to_json(const Box& b) { return json{{"re", interval_to_json(b.re)}, {"im", interval_to_json(b.im)}}; }

Matrix2 matrix_from_json(const json& j, mpfr_prec_t prec) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw std::invalid_argument("matrix must be [[box, box], [box, box]]");
    return Matrix2(box_from_json(j[0][0], prec), box_from_json(j[0][1], prec), box_from_json(j[1][0], prec),
                   box_from_json(j[1][1], prec));
}

json matrix_to_json(const Matrix2& m) {
    return json::array({json::array({box_to_json(m.a()), box_to_json(m.b())}),
                        json::array({box_to_json(m.c()), box_to_json(m.d())})});
}

}  // namespace cert
