#include <designkit/casebase.hpp>

#include "funcstruct_json.hpp"
#include "json_io.hpp"

namespace designkit::cbr
{

using detail::child_path;
using detail::json;
using detail::ordered_json;
using detail::reject_unknown_keys;
using detail::require;
using detail::require_array;
using detail::require_nonempty_string;
using detail::require_string;

case_base parse_case_base( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  require_array( doc, "" );
  std::vector<design_case> cases;
  for ( std::size_t i = 0; i < doc.size(); ++i )
  {
    const auto at = child_path( "", i );
    reject_unknown_keys( doc[i], { "id", "source", "problem", "solution" }, at );
    design_case c;
    c.id = require_nonempty_string( require( doc[i], "id", at ), child_path( at, "id" ) );
    for ( const auto& prior : cases )
      if ( prior.id == c.id )
        throw parse_error( child_path( at, "id" ), "duplicate case id '" + c.id + "'" );
    if ( doc[i].contains( "source" ) )
      c.source = require_nonempty_string( doc[i]["source"], child_path( at, "source" ) );

    const auto problem_path = child_path( at, "problem" );
    auto problem = funcstruct::detail::problem_from_json( require( doc[i], "problem", at ), problem_path );
    if ( !funcstruct::is_decomposable( problem ) )
      throw parse_error( problem_path, "case problems must be function structures" );
    c.problem = std::get<funcstruct::function_structure>( std::move( problem ) );
    if ( auto report = funcstruct::validate( c.problem ); !report.ok() )
      throw parse_error( problem_path, report.violations.front().message );

    const auto solution_path = child_path( at, "solution" );
    const auto& sol = require( doc[i], "solution", at );
    reject_unknown_keys( sol, { "description", "components" }, solution_path );
    c.solution.description = require_string( require( sol, "description", solution_path ),
                                             child_path( solution_path, "description" ) );
    const auto components_path = child_path( solution_path, "components" );
    const auto& components = require_array( require( sol, "components", solution_path ), components_path );
    for ( std::size_t k = 0; k < components.size(); ++k )
    {
      const auto cat = child_path( components_path, k );
      reject_unknown_keys( components[k], { "name", "realizes" }, cat );
      c.solution.components.push_back(
          { require_nonempty_string( require( components[k], "name", cat ), child_path( cat, "name" ) ),
            require_string( require( components[k], "realizes", cat ), child_path( cat, "realizes" ) ) } );
    }
    cases.push_back( std::move( c ) );
  }
  return case_base( std::move( cases ) );
}

std::string serialize_case_base( const case_base& base )
{
  auto doc = ordered_json::array();
  for ( const auto& c : base.cases() )
  {
    ordered_json entry;
    entry["id"] = c.id;
    entry["source"] = c.source;
    entry["problem"] = funcstruct::detail::problem_to_json( c.problem );
    ordered_json sol;
    sol["description"] = c.solution.description;
    sol["components"] = ordered_json::array();
    for ( const auto& part : c.solution.components )
      sol["components"].push_back( { { "name", part.name }, { "realizes", part.realizes } } );
    entry["solution"] = std::move( sol );
    doc.push_back( std::move( entry ) );
  }
  return detail::dump( doc );
}

similarity_spec parse_similarity_spec( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  reject_unknown_keys( doc, { "function_weight", "flow_weight", "structure_weight" }, "" );
  similarity_spec spec;
  spec.function_weight = detail::require_rational( require( doc, "function_weight", "" ), "/function_weight" );
  spec.flow_weight = detail::require_rational( require( doc, "flow_weight", "" ), "/flow_weight" );
  spec.structure_weight = detail::require_rational( require( doc, "structure_weight", "" ), "/structure_weight" );
  try
  {
    spec.check();
  }
  catch ( const error& e )
  {
    throw parse_error( "/", e.what() );
  }
  return spec;
}

std::vector<requirement> parse_requirements( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  require_array( doc, "" );
  std::vector<requirement> out;
  for ( std::size_t i = 0; i < doc.size(); ++i )
  {
    const auto at = child_path( "", i );
    reject_unknown_keys( doc[i], { "name", "has_component", "lacks_component", "min_components", "max_components" }, at );
    requirement req;
    req.name = require_nonempty_string( require( doc[i], "name", at ), child_path( at, "name" ) );
    if ( doc[i].size() != 2 )
      throw parse_error( at, "requirement needs exactly one test besides its name" );
    if ( doc[i].contains( "has_component" ) )
    {
      req.test = requirement::kind::has_component;
      req.component = require_nonempty_string( doc[i]["has_component"], child_path( at, "has_component" ) );
    }
    else if ( doc[i].contains( "lacks_component" ) )
    {
      req.test = requirement::kind::lacks_component;
      req.component = require_nonempty_string( doc[i]["lacks_component"], child_path( at, "lacks_component" ) );
    }
    else
    {
      const bool at_least = doc[i].contains( "min_components" );
      const char* key = at_least ? "min_components" : "max_components";
      req.test = at_least ? requirement::kind::min_components : requirement::kind::max_components;
      auto n = detail::require_integer( doc[i][key], child_path( at, key ) );
      if ( n < 0 )
        throw parse_error( child_path( at, key ), "count must be non-negative" );
      req.count = static_cast<std::size_t>( n );
    }
    out.push_back( std::move( req ) );
  }
  return out;
}

} // namespace designkit::cbr
