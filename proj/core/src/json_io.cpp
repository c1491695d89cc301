#include "json_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <vector>

namespace designkit::detail
{

json parse_document( std::string_view text )
{
  if ( std::all_of( text.begin(), text.end(), []( unsigned char c ) { return std::isspace( c ); } ) )
    throw parse_error( "", "empty document" );

  std::vector<std::set<std::string>> keys;
  json::parser_callback_t track_keys = [&keys]( int, json::parse_event_t event, json& parsed ) {
    switch ( event )
    {
    case json::parse_event_t::object_start:
      keys.emplace_back();
      break;
    case json::parse_event_t::object_end:
      keys.pop_back();
      break;
    case json::parse_event_t::key:
    {
      auto name = parsed.get<std::string>();
      if ( !keys.back().insert( name ).second )
        throw parse_error( "", "duplicate object key '" + name + "'" );
      break;
    }
    default:
      break;
    }
    return true;
  };

  try
  {
    return json::parse( text.begin(), text.end(), track_keys );
  }
  catch ( const json::parse_error& e )
  {
    throw parse_error( "byte " + std::to_string( e.byte ), e.what() );
  }
}

std::string child_path( const std::string& path, std::string_view key )
{
  return path + "/" + std::string( key );
}

std::string child_path( const std::string& path, std::size_t index )
{
  return path + "/" + std::to_string( index );
}

namespace
{

std::string where( const std::string& path )
{
  return path.empty() ? std::string( "/" ) : path;
}

} // namespace

const json& require( const json& object, std::string_view key, const std::string& path )
{
  require_object( object, path );
  auto it = object.find( std::string( key ) );
  if ( it == object.end() )
    throw parse_error( where( path ), "missing required key '" + std::string( key ) + "'" );
  return *it;
}

const json& require_object( const json& value, const std::string& path )
{
  if ( !value.is_object() )
    throw parse_error( where( path ), std::string( "expected object, found " ) + value.type_name() );
  return value;
}

const json& require_array( const json& value, const std::string& path )
{
  if ( !value.is_array() )
    throw parse_error( where( path ), std::string( "expected array, found " ) + value.type_name() );
  return value;
}

std::string require_string( const json& value, const std::string& path )
{
  if ( !value.is_string() )
    throw parse_error( where( path ), std::string( "expected string, found " ) + value.type_name() );
  return value.get<std::string>();
}

std::string require_nonempty_string( const json& value, const std::string& path )
{
  auto s = require_string( value, path );
  if ( s.empty() )
    throw parse_error( where( path ), "expected non-empty string" );
  return s;
}

bool require_bool( const json& value, const std::string& path )
{
  if ( !value.is_boolean() )
    throw parse_error( where( path ), std::string( "expected boolean, found " ) + value.type_name() );
  return value.get<bool>();
}

std::int64_t require_integer( const json& value, const std::string& path )
{
  if ( !value.is_number_integer() )
    throw parse_error( where( path ), std::string( "expected integer, found " ) + value.type_name() );
  return value.get<std::int64_t>();
}

double require_number( const json& value, const std::string& path )
{
  if ( !value.is_number() )
    throw parse_error( where( path ), std::string( "expected number, found " ) + value.type_name() );
  return value.get<double>();
}

rational require_rational( const json& value, const std::string& path )
{
  try
  {
    if ( value.is_number_integer() )
      return rational( value.get<std::int64_t>() );
    if ( value.is_number_float() )
      return parse_rational( format_double( value.get<double>() ) );
    if ( value.is_string() )
      return parse_rational( value.get<std::string>() );
  }
  catch ( const parse_error& )
  {
    throw;
  }
  catch ( const error& e )
  {
    throw parse_error( where( path ), e.what() );
  }
  throw parse_error( where( path ), std::string( "expected number or \"n/d\" string, found " ) + value.type_name() );
}

void reject_unknown_keys( const json& object, std::initializer_list<std::string_view> allowed,
                          const std::string& path )
{
  require_object( object, path );
  for ( auto it = object.begin(); it != object.end(); ++it )
  {
    if ( std::find( allowed.begin(), allowed.end(), it.key() ) == allowed.end() )
      throw parse_error( child_path( path, it.key() ), "unknown key" );
  }
}

std::string format_double( double value )
{
  char buffer[64];
  auto [ptr, ec] = std::to_chars( buffer, buffer + sizeof buffer, value );
  if ( ec != std::errc{} )
    throw error( "cannot format number" );
  return std::string( buffer, ptr );
}

std::string dump( const ordered_json& document )
{
  return document.dump( 2 ) + "\n";
}

} // namespace designkit::detail
