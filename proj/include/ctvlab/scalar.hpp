#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ctvlab {

// Exact rationals, always in lowest terms with positive denominator
// (canonicalized by GMP).  All geometry in this project stays in Q.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Raised on malformed user input; the CLI maps it to exit code 1.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

// Serialized form is "num/den" (or just "num" when den == 1), base 10.
inline std::string rat_to_string(const Rat& r)
{
    Int n = numerator(r), d = denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Rat rat_from_string(const std::string& s)
{
    if (s.empty()) throw input_error("empty rational literal");
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw input_error("zero denominator in rational literal: " + s);
        return Rat(n, d);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("malformed rational literal: " + s);
    }
}

// splitmix64: tiny, portable, and stable across platforms.  Used everywhere a
// seeded stream is needed so serialized outputs are reproducible bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // uniform numerator over a fixed denominator, in [-1, 1]
    Rat symmetric_unit(std::uint64_t den = 1u << 16)
    {
        std::int64_t num = static_cast<std::int64_t>(below(2 * den + 1)) - static_cast<std::int64_t>(den);
        return Rat(Int(num), Int(den));
    }

private:
    std::uint64_t state_;
};

} // namespace ctvlab
