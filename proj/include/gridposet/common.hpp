#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gridposet {

using BigCount = mpz_class;
using Rational = mpq_class;

/// Raised when an operation would materialize or enumerate more than the
/// configured limit allows.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a certified inequality or structural invariant fails at run
/// time. Seeing one of these means either the input broke a precondition or
/// the implementation has a bug.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size limits shared by every module that materializes points or sets.
struct Limits {
    // Points of the box that may be materialized as explicit vectors.
    std::uint64_t materialize = 2'000'000;
    // Points of the box that exhaustive antichain/down-set routines accept.
    std::uint64_t enumerate = 64;
    // Distinct objects (antichains, containers) an enumeration may visit.
    std::uint64_t objects = 50'000'000;
    // Boxes below this many points count down-sets by plain subset filtering.
    std::uint64_t subset_filter_below = 25;
    // Slice-containment tests (slices squared) the down-set counter may run.
    std::uint64_t pair_work = 4'000'000'000;
};

/// Lossless "p/q" form; integers print without a denominator.
inline std::string to_fraction_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction(const std::string& s)
{
    Rational q(s);
    q.canonicalize();
    return q;
}

inline mpz_class floor_of(const Rational& q)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class ceil_of(const Rational& q)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline mpz_class factorial(unsigned long k)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

inline mpz_class binomial(const mpz_class& m, unsigned long k)
{
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), m.get_mpz_t(), k);
    return r;
}

inline mpz_class power(const mpz_class& base, unsigned long e)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace gridposet
