#include "funcstruct_json.hpp"

#include <set>

namespace designkit::funcstruct
{

namespace detail
{

using designkit::detail::child_path;
using designkit::detail::json;
using designkit::detail::ordered_json;
using designkit::detail::reject_unknown_keys;
using designkit::detail::require;
using designkit::detail::require_array;
using designkit::detail::require_nonempty_string;
using designkit::detail::require_string;

namespace
{

std::vector<std::string> labels_from_json( const json& array, const std::string& path )
{
  require_array( array, path );
  std::vector<std::string> labels;
  for ( std::size_t i = 0; i < array.size(); ++i )
    labels.push_back( require_nonempty_string( array[i], child_path( path, i ) ) );
  return labels;
}

black_box black_box_from_json( const json& doc, const std::string& path )
{
  reject_unknown_keys( doc, { "kind", "label", "inputs", "outputs" }, path );
  black_box bb;
  if ( doc.contains( "label" ) )
    bb.label = require_string( doc["label"], child_path( path, "label" ) );
  bb.inputs = labels_from_json( require( doc, "inputs", path ), child_path( path, "inputs" ) );
  bb.outputs = labels_from_json( require( doc, "outputs", path ), child_path( path, "outputs" ) );
  if ( bb.inputs.empty() )
    throw parse_error( child_path( path, "inputs" ), "black box needs at least one input" );
  if ( bb.outputs.empty() )
    throw parse_error( child_path( path, "outputs" ), "black box needs at least one output" );
  return bb;
}

} // namespace

function_structure structure_from_json( const json& doc, const std::string& path )
{
  reject_unknown_keys( doc, { "kind", "vertices", "terminals", "flows" }, path );
  function_structure fs;
  std::set<std::string> ids;
  auto claim = [&ids]( const std::string& id, const std::string& where ) {
    if ( !ids.insert( id ).second )
      throw parse_error( where, "duplicate id '" + id + "'" );
  };

  const auto vertices_path = child_path( path, "vertices" );
  const auto& vertices = require_array( require( doc, "vertices", path ), vertices_path );
  for ( std::size_t i = 0; i < vertices.size(); ++i )
  {
    const auto at = child_path( vertices_path, i );
    reject_unknown_keys( vertices[i], { "id", "label" }, at );
    function_vertex v;
    v.id = require_nonempty_string( require( vertices[i], "id", at ), child_path( at, "id" ) );
    v.label = require_string( require( vertices[i], "label", at ), child_path( at, "label" ) );
    claim( v.id, child_path( at, "id" ) );
    fs.vertices.push_back( std::move( v ) );
  }

  const auto terminals_path = child_path( path, "terminals" );
  const auto& terminals = require_array( require( doc, "terminals", path ), terminals_path );
  for ( std::size_t i = 0; i < terminals.size(); ++i )
  {
    const auto at = child_path( terminals_path, i );
    reject_unknown_keys( terminals[i], { "id", "kind", "label" }, at );
    boundary_terminal t;
    t.id = require_nonempty_string( require( terminals[i], "id", at ), child_path( at, "id" ) );
    auto kind = require_string( require( terminals[i], "kind", at ), child_path( at, "kind" ) );
    if ( kind == "input" )
      t.kind = terminal_kind::input;
    else if ( kind == "output" )
      t.kind = terminal_kind::output;
    else
      throw parse_error( child_path( at, "kind" ), "expected \"input\" or \"output\", found \"" + kind + "\"" );
    t.label = require_nonempty_string( require( terminals[i], "label", at ), child_path( at, "label" ) );
    claim( t.id, child_path( at, "id" ) );
    fs.terminals.push_back( std::move( t ) );
  }

  const auto flows_path = child_path( path, "flows" );
  const auto& flows = require_array( require( doc, "flows", path ), flows_path );
  for ( std::size_t i = 0; i < flows.size(); ++i )
  {
    const auto at = child_path( flows_path, i );
    reject_unknown_keys( flows[i], { "source", "target", "label" }, at );
    flow f;
    f.source = require_nonempty_string( require( flows[i], "source", at ), child_path( at, "source" ) );
    f.target = require_nonempty_string( require( flows[i], "target", at ), child_path( at, "target" ) );
    f.label = require_nonempty_string( require( flows[i], "label", at ), child_path( at, "label" ) );
    if ( !ids.count( f.source ) )
      throw parse_error( child_path( at, "source" ), "unknown id '" + f.source + "'" );
    if ( !ids.count( f.target ) )
      throw parse_error( child_path( at, "target" ), "unknown id '" + f.target + "'" );
    fs.flows.push_back( std::move( f ) );
  }
  return fs;
}

design_problem problem_from_json( const json& doc, const std::string& path )
{
  auto kind = require_string( require( doc, "kind", path ), child_path( path, "kind" ) );
  if ( kind == "structure" )
    return structure_from_json( doc, path );
  if ( kind == "blackbox" )
    return black_box_from_json( doc, path );
  throw parse_error( child_path( path, "kind" ), "expected \"structure\" or \"blackbox\", found \"" + kind + "\"" );
}

ordered_json problem_to_json( const design_problem& p )
{
  ordered_json doc;
  if ( const auto* bb = std::get_if<black_box>( &p ) )
  {
    doc["kind"] = "blackbox";
    doc["label"] = bb->label;
    doc["inputs"] = bb->inputs;
    doc["outputs"] = bb->outputs;
    return doc;
  }

  const auto& fs = std::get<function_structure>( p );
  doc["kind"] = "structure";
  doc["vertices"] = ordered_json::array();
  for ( const auto& v : fs.vertices )
    doc["vertices"].push_back( { { "id", v.id }, { "label", v.label } } );
  doc["terminals"] = ordered_json::array();
  for ( const auto& t : fs.terminals )
    doc["terminals"].push_back( { { "id", t.id },
                                  { "kind", t.kind == terminal_kind::input ? "input" : "output" },
                                  { "label", t.label } } );
  doc["flows"] = ordered_json::array();
  for ( const auto& f : fs.flows )
    doc["flows"].push_back( { { "source", f.source }, { "target", f.target }, { "label", f.label } } );
  return doc;
}

} // namespace detail

design_problem parse_structure( std::string_view text )
{
  return detail::problem_from_json( designkit::detail::parse_document( text ), "" );
}

std::string serialize_structure( const design_problem& p )
{
  return designkit::detail::dump( detail::problem_to_json( p ) );
}

} // namespace designkit::funcstruct
