#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace designkit
{

/*! \brief Exact rational used for PI, innovation and creativity indices.
 *
 * Compare with `rational( n )`, not a bare integer: older Boost releases
 * recurse forever on mixed `==` / `!=` when compiled as C++20.
 */
using rational = boost::rational<std::int64_t>;

/*! \brief `n/d` form, `n` when the denominator is one. */
std::string to_string( const rational& r );

/*! \brief Parses `n`, `n/d` or a finite decimal literal such as `0.35`. */
rational parse_rational( const std::string& text );

inline double to_double( const rational& r )
{
  return boost::rational_cast<double>( r );
}

} // namespace designkit
