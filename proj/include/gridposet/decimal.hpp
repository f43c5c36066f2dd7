#pragma once

#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "gridposet/common.hpp"

namespace gridposet {

/// 50-significant-digit decimal floating point.
using Decimal = boost::multiprecision::cpp_dec_float_50;

inline Decimal to_decimal(const BigCount& x)
{
    return Decimal(x.get_str());
}

inline Decimal to_decimal(const Rational& q)
{
    return to_decimal(q.get_num()) / to_decimal(q.get_den());
}

inline Decimal log2_of(const Decimal& x)
{
    return boost::multiprecision::log(x) / boost::multiprecision::log(Decimal(2));
}

inline Decimal log2_of(const BigCount& x)
{
    return log2_of(to_decimal(x));
}

/// Scientific notation with `digits` significant digits.
inline std::string to_string(const Decimal& x, int digits = 20)
{
    return x.str(digits, std::ios_base::scientific);
}

}  // namespace gridposet
