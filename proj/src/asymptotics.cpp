#include "gridposet/asymptotics.hpp"

#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "gridposet/containers.hpp"
#include "gridposet/exact_counting.hpp"

namespace gridposet {

namespace {

Decimal pi()
{
    return boost::math::constants::pi<Decimal>();
}

}  // namespace

Decimal clt_middle_layer(int n, int D)
{
    if (n < 2)
        throw std::invalid_argument("clt_middle_layer: n must be at least 2 (n^2 - 1 vanishes at n = 1)");
    if (D < 1)
        throw std::invalid_argument("clt_middle_layer: D must be positive");
    const Decimal factor = boost::multiprecision::sqrt(Decimal(6) / (pi() * Decimal(n * n - 1) * Decimal(D)));
    return factor * to_decimal(power(mpz_class(n), static_cast<unsigned long>(D)));
}

AsymptoticReport compare_middle_layer(int n, int D)
{
    AsymptoticReport r;
    r.n = n;
    r.D = D;
    r.clt_estimate = clt_middle_layer(n, D);
    r.exact = middle_layer_size(GridBox(n, D));
    const Decimal exact = to_decimal(r.exact);
    r.relative_error = boost::multiprecision::abs(r.clt_estimate - exact) / exact;
    return r;
}

Decimal exponent_ratio(int n, int D, const Decimal& log2_count)
{
    const Decimal scale = boost::multiprecision::sqrt(Decimal(6) / (Decimal(D) * pi())) *
                          to_decimal(power(mpz_class(n), static_cast<unsigned long>(D - 1)));
    return log2_count / scale;
}

ExponentSandwich theorem_main_exponent(int n, int d, bool certify, const Limits& limits)
{
    const GridBox box(n, d + 1);
    ExponentSandwich s;
    s.n = n;
    s.d = d;
    s.scale = boost::multiprecision::sqrt(Decimal(6) / (Decimal(d + 1) * pi())) *
              to_decimal(power(mpz_class(n), static_cast<unsigned long>(d)));
    s.lower = middle_layer_size(box);
    const Decimal lower = to_decimal(s.lower);
    if (box.total_points() <= mpz_class(std::to_string(limits.enumerate))) {
        try {
            s.exact_log2 = log2_of(count_downsets(box, limits));
        } catch (const CapExceeded&) {
        }
    }
    if (certify && box.total_points() > 1)
        s.certified_upper = certified_upper_bound(box, limits).certified_log2_upper;
    if (s.exact_log2 && *s.exact_log2 < lower)
        s.ok = false;
    if (s.certified_upper && *s.certified_upper < lower)
        s.ok = false;
    if (s.exact_log2 && s.certified_upper && *s.certified_upper < *s.exact_log2)
        s.ok = false;
    return s;
}

std::string asymptotics_csv_header()
{
    return "n,D,exact,estimate,relative_error";
}

std::string to_csv_row(const AsymptoticReport& r)
{
    return std::to_string(r.n) + "," + std::to_string(r.D) + "," + r.exact.get_str() + "," +
           to_string(r.clt_estimate) + "," + to_string(r.relative_error);
}

}  // namespace gridposet
