#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "rational.hpp"

namespace mvf {

/// Extended-precision real used by the constants pipeline (60 decimal digits).
using Wide = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>,
                                           boost::multiprecision::et_off>;

template <class T>
T from_rational(const Rational& q) {
    if constexpr (std::is_same_v<T, Wide>) {
        return Wide(q.get_num().get_str()) / Wide(q.get_den().get_str());
    } else {
        return static_cast<T>(to_double(q));
    }
}

template <class T>
T pi() {
    return boost::math::constants::pi<T>();
}

template <class T>
double to_double(const T& v) {
    return static_cast<double>(v);
}

/// Machine epsilon of the working type.
template <class T>
T working_epsilon() {
    return std::numeric_limits<T>::epsilon();
}

}  // namespace mvf
