#include <designkit/error.hpp>
#include <designkit/rational.hpp>

#include <cctype>
#include <charconv>
#include <limits>

namespace designkit
{

std::string to_string( const rational& r )
{
  if ( r.denominator() == 1 )
    return std::to_string( r.numerator() );
  return std::to_string( r.numerator() ) + "/" + std::to_string( r.denominator() );
}

namespace
{

std::int64_t parse_int( std::string_view digits, const std::string& text )
{
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars( digits.data(), digits.data() + digits.size(), value );
  if ( ec != std::errc{} || ptr != digits.data() + digits.size() )
    throw error( "not a rational number: '" + text + "'" );
  return value;
}

std::int64_t pow10( int exponent, const std::string& text )
{
  if ( exponent > 18 )
    throw error( "rational out of range: '" + text + "'" );
  std::int64_t p = 1;
  while ( exponent-- > 0 )
    p *= 10;
  return p;
}

} // namespace

rational parse_rational( const std::string& text )
{
  std::string_view s = text;
  if ( s.empty() )
    throw error( "not a rational number: ''" );

  if ( auto slash = s.find( '/' ); slash != std::string_view::npos )
  {
    auto num = parse_int( s.substr( 0, slash ), text );
    auto den = parse_int( s.substr( slash + 1 ), text );
    if ( den == 0 )
      throw error( "zero denominator: '" + text + "'" );
    return rational( num, den );
  }

  bool negative = false;
  if ( s.front() == '-' || s.front() == '+' )
  {
    negative = s.front() == '-';
    s.remove_prefix( 1 );
  }

  int exponent = 0;
  if ( auto e = s.find_first_of( "eE" ); e != std::string_view::npos )
  {
    auto exp_text = s.substr( e + 1 );
    if ( !exp_text.empty() && exp_text.front() == '+' )
      exp_text.remove_prefix( 1 );
    exponent = static_cast<int>( parse_int( exp_text, text ) );
    s = s.substr( 0, e );
  }

  std::string digits;
  bool seen_point = false;
  for ( char c : s )
  {
    if ( c == '.' && !seen_point )
    {
      seen_point = true;
      continue;
    }
    if ( !std::isdigit( static_cast<unsigned char>( c ) ) )
      throw error( "not a rational number: '" + text + "'" );
    digits.push_back( c );
    if ( seen_point )
      --exponent;
  }
  if ( digits.empty() )
    throw error( "not a rational number: '" + text + "'" );

  std::int64_t mantissa = parse_int( digits, text );
  if ( negative )
    mantissa = -mantissa;
  if ( exponent >= 0 )
  {
    auto scale = pow10( exponent, text );
    if ( mantissa > std::numeric_limits<std::int64_t>::max() / scale )
      throw error( "rational out of range: '" + text + "'" );
    return rational( mantissa * scale );
  }
  return rational( mantissa, pow10( -exponent, text ) );
}

} // namespace designkit
