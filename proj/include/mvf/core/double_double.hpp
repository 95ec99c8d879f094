#pragma once

namespace mvf {

/// Compensated accumulator holding an unevaluated sum hi + lo.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    void add(double v) {
        double s = hi + v;
        double bp = s - hi;
        double err = (hi - (s - bp)) + (v - bp);
        hi = s;
        lo += err;
    }
    void add(const DoubleDouble& o) {
        add(o.hi);
        add(o.lo);
    }
    double value() const { return hi + lo; }
};

}  // namespace mvf
