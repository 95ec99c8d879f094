#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "mvf/asymptotics/prediction.hpp"
#include "mvf/io/format.hpp"
#include "mvf/perron/perron.hpp"
#include "mvf/zeta/checks.hpp"

namespace mvf::io {

inline constexpr const char* sweep_csv_header = "fid,x,h,N,exact,prediction,abs_err,rel_err,budget";
inline constexpr const char* perron_csv_header = "fid,x,T,integral,exact,abs_err,bound,ratio";
inline constexpr const char* sum_csv_header = "fid,x,h,exact,float";
inline constexpr const char* growth_csv_header = "sigma,t,abs_zeta,envelope,ratio";

inline std::string sweep_csv(const std::vector<PredictionReport>& rows) {
    std::ostringstream os;
    os << "# mvf-sweep-csv/1\n" << sweep_csv_header << "\n";
    for (const auto& r : rows) {
        os << tag(r.fn) << ',' << r.x << ',' << r.h << ',' << r.N << ',' << format_double(r.exact_value) << ','
           << format_double(r.prediction.value) << ',' << format_double(r.abs_err) << ','
           << format_double(r.rel_err) << ',' << format_double(r.prediction.remainder) << "\n";
    }
    return os.str();
}

inline std::string perron_csv(const std::vector<PerronScan>& scans) {
    std::ostringstream os;
    os << "# mvf-perron-csv/1\n" << perron_csv_header << "\n";
    for (const auto& sc : scans)
        for (const auto& r : sc.rows)
            os << tag(r.fn) << ',' << format_double(r.x) << ',' << format_double(r.T) << ','
               << format_double(r.integral.re) << ',' << format_double(r.exact_value) << ','
               << format_double(r.abs_err) << ',' << format_double(r.bound) << ',' << format_double(r.ratio) << "\n";
    return os.str();
}

inline std::string sum_csv(const std::vector<IntervalSum>& sums) {
    std::ostringstream os;
    os << "# mvf-sum-csv/1\n" << sum_csv_header << "\n";
    for (const auto& s : sums)
        os << tag(s.fn) << ',' << s.x << ',' << s.h << ',' << to_string(s.exact) << ','
           << format_double(to_double(s.exact)) << "\n";
    return os.str();
}

inline std::string growth_csv(const GrowthEnvelopeReport& rep) {
    std::ostringstream os;
    os << "# mvf-growth-csv/1\n" << growth_csv_header << "\n";
    for (const auto& s : rep.samples)
        os << format_double(s.sigma) << ',' << format_double(s.t) << ',' << format_double(s.abs_zeta) << ','
           << format_double(s.envelope) << ',' << format_double(s.ratio) << "\n";
    return os.str();
}

}  // namespace mvf::io
