#include <designkit/novelty.hpp>

#include "json_io.hpp"

#include <cmath>

namespace designkit::novelty
{

using detail::child_path;
using detail::json;
using detail::ordered_json;

namespace
{

value value_from_json( const json& v, const std::string& path )
{
  switch ( v.type() )
  {
  case json::value_t::null: return std::monostate{};
  case json::value_t::boolean: return v.get<bool>();
  case json::value_t::number_integer:
  case json::value_t::number_unsigned:
  case json::value_t::number_float: return v.get<double>();
  case json::value_t::string: return v.get<std::string>();
  default: throw parse_error( path, std::string( "expected a JSON scalar, found " ) + v.type_name() );
  }
}

ordered_json value_to_json( const value& v )
{
  struct
  {
    ordered_json operator()( std::monostate ) const { return nullptr; }
    ordered_json operator()( bool b ) const { return b; }
    ordered_json operator()( double d ) const
    {
      // integral values are written without a fractional part
      if ( std::trunc( d ) == d && std::fabs( d ) < 9.0e15 )
        return static_cast<std::int64_t>( d );
      return d;
    }
    ordered_json operator()( const std::string& s ) const { return s; }
  } render;
  return std::visit( render, v );
}

variable_domain domain_from_json( const json& doc, const std::string& path )
{
  detail::reject_unknown_keys( doc, { "set", "interval", "predicate" }, path );
  variable_domain d;
  if ( doc.contains( "set" ) )
  {
    const auto at = child_path( path, "set" );
    const auto& set = detail::require_array( doc["set"], at );
    if ( set.empty() )
      throw parse_error( at, "value set must not be empty" );
    for ( std::size_t i = 0; i < set.size(); ++i )
      d.values.push_back( value_from_json( set[i], child_path( at, i ) ) );
  }
  if ( doc.contains( "interval" ) )
  {
    const auto at = child_path( path, "interval" );
    const auto& bounds = detail::require_array( doc["interval"], at );
    if ( bounds.size() != 2 )
      throw parse_error( at, "interval must be [lower, upper]" );
    interval range{ detail::require_number( bounds[0], child_path( at, 0 ) ),
                    detail::require_number( bounds[1], child_path( at, 1 ) ) };
    if ( range.lower > range.upper )
      throw parse_error( at, "interval lower bound exceeds upper bound" );
    d.range = range;
  }
  if ( doc.contains( "predicate" ) )
    d.predicate = detail::require_nonempty_string( doc["predicate"], child_path( path, "predicate" ) );
  if ( d.values.empty() && !d.range && !d.predicate )
    throw parse_error( path, "domain needs \"set\", \"interval\" or \"predicate\"" );
  return d;
}

ordered_json domain_to_json( const variable_domain& d )
{
  ordered_json doc = ordered_json::object();
  if ( !d.values.empty() )
  {
    doc["set"] = ordered_json::array();
    for ( const auto& v : d.values )
      doc["set"].push_back( value_to_json( v ) );
  }
  if ( d.range )
    doc["interval"] = { value_to_json( d.range->lower ), value_to_json( d.range->upper ) };
  if ( d.predicate )
    doc["predicate"] = *d.predicate;
  return doc;
}

} // namespace

knowledge_base parse_knowledge_base( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  detail::reject_unknown_keys( doc, { "variables" }, "" );
  const auto& vars = detail::require_array( detail::require( doc, "variables", "" ), "/variables" );

  std::vector<design_variable> variables;
  for ( std::size_t i = 0; i < vars.size(); ++i )
  {
    const auto at = child_path( "/variables", i );
    detail::reject_unknown_keys( vars[i], { "name", "domain", "subfunction" }, at );
    design_variable var;
    var.name = detail::require_nonempty_string( detail::require( vars[i], "name", at ), child_path( at, "name" ) );
    var.domain = domain_from_json( detail::require( vars[i], "domain", at ), child_path( at, "domain" ) );
    if ( vars[i].contains( "subfunction" ) )
      var.subfunction = detail::require_string( vars[i]["subfunction"], child_path( at, "subfunction" ) );
    for ( std::size_t j = 0; j < variables.size(); ++j )
      if ( variables[j].name == var.name )
        throw parse_error( child_path( at, "name" ), "duplicate variable '" + var.name + "'" );
    variables.push_back( std::move( var ) );
  }
  return knowledge_base( std::move( variables ) );
}

std::string serialize_knowledge_base( const knowledge_base& kb )
{
  ordered_json doc;
  doc["variables"] = ordered_json::array();
  for ( const auto& var : kb.variables() )
  {
    ordered_json entry;
    entry["name"] = var.name;
    entry["domain"] = domain_to_json( var.domain );
    if ( var.subfunction )
      entry["subfunction"] = *var.subfunction;
    doc["variables"].push_back( std::move( entry ) );
  }
  return detail::dump( doc );
}

design_instance parse_design( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  detail::reject_unknown_keys( doc, { "assignments", "feasible" }, "" );
  const auto& assignments = detail::require_object( detail::require( doc, "assignments", "" ), "/assignments" );
  if ( assignments.empty() )
    throw parse_error( "/assignments", "design needs at least one assignment" );

  design_instance d;
  for ( auto it = assignments.begin(); it != assignments.end(); ++it )
  {
    if ( it.key().empty() )
      throw parse_error( "/assignments", "empty variable name" );
    d.assignments.emplace( it.key(), value_from_json( it.value(), child_path( "/assignments", it.key() ) ) );
  }
  if ( doc.contains( "feasible" ) )
    d.feasible = detail::require_bool( doc["feasible"], "/feasible" );
  return d;
}

std::string serialize_design( const design_instance& d )
{
  ordered_json doc;
  doc["assignments"] = ordered_json::object();
  for ( const auto& [name, v] : d.assignments )
    doc["assignments"][name] = value_to_json( v );
  if ( d.feasible )
    doc["feasible"] = *d.feasible;
  return detail::dump( doc );
}

} // namespace designkit::novelty
