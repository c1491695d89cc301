#include <designkit/classify.hpp>

#include "json_io.hpp"

namespace designkit::classify
{

using detail::child_path;
using detail::json;
using detail::ordered_json;
using detail::reject_unknown_keys;
using detail::require;

namespace
{

template<typename Enum, std::size_t N>
Enum read_enum( const json& value, const Enum ( &choices )[N], const std::string& path )
{
  const auto name = detail::require_string( value, path );
  for ( auto c : choices )
    if ( to_string( c ) == name )
      return c;
  std::string expected;
  for ( auto c : choices )
    expected += ( expected.empty() ? "" : ", " ) + std::string( to_string( c ) );
  throw parse_error( path, "unknown value '" + name + "', expected one of " + expected );
}

constexpr novelty_level all_novelty[] = { novelty_level::routine, novelty_level::innovative, novelty_level::creative };
constexpr capability_level all_capabilities[] = { capability_level::none, capability_level::limited,
                                                  capability_level::full };
constexpr method all_methods[] = { method::grammar_based, method::functional_synthesis, method::analogy_based };

ordered_json pi_json( const std::optional<rational>& pi )
{
  if ( !pi )
    return nullptr;
  if ( pi->denominator() == 1 )
    return pi->numerator();
  return designkit::to_string( *pi );
}

} // namespace

problem_profile parse_profile( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  reject_unknown_keys( doc, { "decomposable", "pi", "novelty" }, "" );
  problem_profile p;
  p.decomposable = detail::require_bool( require( doc, "decomposable", "" ), "/decomposable" );
  if ( doc.contains( "pi" ) && !doc["pi"].is_null() )
    p.pi = detail::require_rational( doc["pi"], "/pi" );
  p.novelty = read_enum( require( doc, "novelty", "" ), all_novelty, "/novelty" );
  try
  {
    check_profile( p );
  }
  catch ( const error& e )
  {
    throw parse_error( "/pi", e.what() );
  }
  return p;
}

std::string serialize_profile( const problem_profile& p )
{
  ordered_json doc;
  doc["decomposable"] = p.decomposable;
  doc["pi"] = pi_json( p.pi );
  doc["novelty"] = std::string( to_string( p.novelty ) );
  return detail::dump( doc );
}

capability_matrix parse_matrix( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  detail::require_array( doc, "" );
  capability_matrix m;
  for ( std::size_t i = 0; i < doc.size(); ++i )
  {
    const auto at = child_path( "", i );
    reject_unknown_keys( doc[i],
                         { "method", "requires_decomposable", "handles_interdependencies", "handles_innovation",
                           "handles_creativity" },
                         at );
    method_capabilities row;
    row.method = read_enum( require( doc[i], "method", at ), all_methods, child_path( at, "method" ) );
    for ( const auto& prior : m )
      if ( prior.method == row.method )
        throw parse_error( child_path( at, "method" ), "method listed twice" );
    row.requires_decomposable = detail::require_bool( require( doc[i], "requires_decomposable", at ),
                                                      child_path( at, "requires_decomposable" ) );
    row.handles_interdependencies = read_enum( require( doc[i], "handles_interdependencies", at ), all_capabilities,
                                               child_path( at, "handles_interdependencies" ) );
    row.handles_innovation = read_enum( require( doc[i], "handles_innovation", at ), all_capabilities,
                                        child_path( at, "handles_innovation" ) );
    row.handles_creativity = read_enum( require( doc[i], "handles_creativity", at ), all_capabilities,
                                        child_path( at, "handles_creativity" ) );
    m.push_back( row );
  }
  return m;
}

std::string serialize_matrix( const capability_matrix& m )
{
  auto doc = ordered_json::array();
  for ( const auto& row : m )
  {
    ordered_json entry;
    entry["method"] = std::string( to_string( row.method ) );
    entry["requires_decomposable"] = row.requires_decomposable;
    entry["handles_interdependencies"] = std::string( to_string( row.handles_interdependencies ) );
    entry["handles_innovation"] = std::string( to_string( row.handles_innovation ) );
    entry["handles_creativity"] = std::string( to_string( row.handles_creativity ) );
    doc.push_back( std::move( entry ) );
  }
  return detail::dump( doc );
}

std::string serialize_report( const method_report& r )
{
  ordered_json doc;
  doc["methods"] = ordered_json::array();
  for ( const auto& v : r.verdicts )
    doc["methods"].push_back( { { "method", std::string( to_string( v.method ) ) },
                                { "verdict", std::string( to_string( v.verdict ) ) },
                                { "rationale", v.rationale } } );
  doc["applicable"] = r.count( verdict::applicable );
  doc["limited"] = r.count( verdict::limited );
  return detail::dump( doc );
}

} // namespace designkit::classify
