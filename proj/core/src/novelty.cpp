#include <designkit/novelty.hpp>

#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace designkit::novelty
{

std::string to_string( const value& v )
{
  struct
  {
    std::string operator()( std::monostate ) const { return "null"; }
    std::string operator()( bool b ) const { return b ? "true" : "false"; }
    std::string operator()( double d ) const { return detail::format_double( d ); }
    std::string operator()( const std::string& s ) const { return detail::json( s ).dump(); }
  } render;
  return std::visit( render, v );
}

variable_domain variable_domain::of_set( std::vector<value> values )
{
  variable_domain d;
  d.values = std::move( values );
  return d;
}

variable_domain variable_domain::of_interval( double lower, double upper )
{
  variable_domain d;
  d.range = interval{ lower, upper };
  return d;
}

variable_domain variable_domain::of_predicate( std::string description )
{
  variable_domain d;
  d.predicate = std::move( description );
  return d;
}

bool variable_domain::contains( const value& v ) const
{
  if ( predicate )
    return true;
  if ( range )
    if ( const auto* x = std::get_if<double>( &v ); x && range->lower <= *x && *x <= range->upper )
      return true;
  return std::find( values.begin(), values.end(), v ) != values.end();
}

namespace
{

void check_domain( const design_variable& var )
{
  const auto& d = var.domain;
  if ( d.values.empty() && !d.range && !d.predicate )
    throw error( "variable '" + var.name + "' has an empty domain" );
  if ( d.range && !( d.range->lower <= d.range->upper ) )
    throw error( "variable '" + var.name + "' has an interval with lower > upper" );
}

} // namespace

knowledge_base::knowledge_base( std::vector<design_variable> variables )
    : variables_( std::move( variables ) )
{
  std::set<std::string_view> names;
  for ( const auto& var : variables_ )
  {
    if ( var.name.empty() )
      throw error( "variable with empty name" );
    if ( !names.insert( var.name ).second )
      throw error( "duplicate variable '" + var.name + "'" );
    check_domain( var );
  }
}

const design_variable* knowledge_base::find( std::string_view name ) const
{
  auto it = std::find_if( variables_.begin(), variables_.end(),
                          [name]( const auto& v ) { return v.name == name; } );
  return it == variables_.end() ? nullptr : &*it;
}

std::string_view to_string( category c )
{
  switch ( c )
  {
  case category::routine: return "routine";
  case category::innovative: return "innovative";
  case category::creative: return "creative";
  case category::not_valuable: return "not_valuable";
  }
  return "unknown";
}

namespace
{

struct classification
{
  std::vector<std::string> unexpected;
  std::vector<std::string> fresh;
};

// A name is either known (and possibly unexpected) or new, never both.
classification classify_names( const knowledge_base& kb, const design_instance& d )
{
  classification c;
  for ( const auto& [name, v] : d.assignments )
  {
    if ( const auto* var = kb.find( name ) )
    {
      if ( !var->domain.contains( v ) )
        c.unexpected.push_back( name );
    }
    else
      c.fresh.push_back( name );
  }
  return c;
}

rational share( std::size_t count, const design_instance& d )
{
  if ( d.assignments.empty() )
    throw error( "design has no assignments" );
  return rational( static_cast<std::int64_t>( count ), static_cast<std::int64_t>( d.assignments.size() ) );
}

} // namespace

rational innovation_index( const knowledge_base& kb, const design_instance& d )
{
  return share( classify_names( kb, d ).unexpected.size(), d );
}

rational creativity_index( const knowledge_base& kb, const design_instance& d )
{
  return share( classify_names( kb, d ).fresh.size(), d );
}

novelty_report assess( const knowledge_base& kb, const design_instance& d, bool feasible )
{
  auto names = classify_names( kb, d );
  novelty_report report;
  report.innovation = share( names.unexpected.size(), d );
  report.creativity = share( names.fresh.size(), d );
  report.unexpected = std::move( names.unexpected );
  report.new_variables = std::move( names.fresh );

  if ( !feasible )
    report.category = category::not_valuable;
  else if ( report.creativity > 0 )
    report.category = category::creative;
  else if ( report.innovation > 0 )
    report.category = category::innovative;
  else
    report.category = category::routine;
  return report;
}

knowledge_base absorb( const knowledge_base& kb, const design_instance& d )
{
  auto variables = kb.variables();
  for ( const auto& [name, v] : d.assignments )
  {
    auto it = std::find_if( variables.begin(), variables.end(),
                            [&name = name]( const auto& var ) { return var.name == name; } );
    if ( it == variables.end() )
    {
      variables.push_back( { name, variable_domain::of_set( { v } ), std::nullopt } );
      continue;
    }
    auto& domain = it->domain;
    if ( domain.contains( v ) )
      continue;
    const auto* x = std::get_if<double>( &v );
    if ( x && domain.range )
    {
      domain.range->lower = std::min( domain.range->lower, *x );
      domain.range->upper = std::max( domain.range->upper, *x );
    }
    else
      domain.values.push_back( v );
  }
  return knowledge_base( std::move( variables ) );
}

} // namespace designkit::novelty
