#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace semilap {

// Software floats for the cancellation-heavy asymptotics: the working type
// carries 50 significant decimal digits, and every published value is
// recomputed at 100 digits as a guard.
using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;

// Raised when the two precisions disagree beyond the certified tolerance;
// callers never see a silently wrong value.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace semilap
