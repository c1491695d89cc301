#include <designkit/grammar.hpp>

#include "json_io.hpp"

#include <algorithm>
#include <set>

namespace designkit::grammar
{

using detail::child_path;
using detail::json;
using detail::ordered_json;
using detail::reject_unknown_keys;
using detail::require;
using detail::require_array;
using detail::require_nonempty_string;
using detail::require_object;
using detail::require_string;

namespace
{

attribute_value scalar_from_json( const json& v, const std::string& path )
{
  switch ( v.type() )
  {
  case json::value_t::boolean: return v.get<bool>();
  case json::value_t::number_integer:
  case json::value_t::number_unsigned: return v.get<std::int64_t>();
  case json::value_t::number_float: return v.get<double>();
  case json::value_t::string: return v.get<std::string>();
  default: throw parse_error( path, std::string( "expected boolean, number or string, found " ) + v.type_name() );
  }
}

ordered_json scalar_to_json( const attribute_value& v )
{
  return std::visit( []( const auto& x ) { return ordered_json( x ); }, v );
}

const char* type_name( attribute_type t )
{
  switch ( t )
  {
  case attribute_type::boolean: return "boolean";
  case attribute_type::integer: return "integer";
  case attribute_type::real: return "real";
  case attribute_type::text: return "text";
  }
  return "?";
}

vocabulary vocabulary_from_json( const json& doc, const std::string& path )
{
  reject_unknown_keys( doc, { "nodes", "edges" }, path );
  vocabulary vocab;
  const auto nodes_path = child_path( path, "nodes" );
  const auto& nodes = require_array( require( doc, "nodes", path ), nodes_path );
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    const auto at = child_path( nodes_path, i );
    reject_unknown_keys( nodes[i], { "label", "attributes" }, at );
    node_schema schema;
    schema.label = require_nonempty_string( require( nodes[i], "label", at ), child_path( at, "label" ) );
    if ( vocab.find_node( schema.label ) )
      throw parse_error( child_path( at, "label" ), "node label '" + schema.label + "' declared twice" );
    if ( nodes[i].contains( "attributes" ) )
    {
      const auto attrs_path = child_path( at, "attributes" );
      const auto& attrs = require_object( nodes[i]["attributes"], attrs_path );
      for ( auto it = attrs.begin(); it != attrs.end(); ++it )
      {
        const auto attr_path = child_path( attrs_path, it.key() );
        reject_unknown_keys( it.value(), { "type", "min", "max", "choices" }, attr_path );
        attribute_domain domain;
        auto type = require_string( require( it.value(), "type", attr_path ), child_path( attr_path, "type" ) );
        if ( type == "boolean" )
          domain.type = attribute_type::boolean;
        else if ( type == "integer" )
          domain.type = attribute_type::integer;
        else if ( type == "real" )
          domain.type = attribute_type::real;
        else if ( type == "text" )
          domain.type = attribute_type::text;
        else
          throw parse_error( child_path( attr_path, "type" ), "unknown attribute type '" + type + "'" );
        if ( it.value().contains( "min" ) )
          domain.min = detail::require_number( it.value()["min"], child_path( attr_path, "min" ) );
        if ( it.value().contains( "max" ) )
          domain.max = detail::require_number( it.value()["max"], child_path( attr_path, "max" ) );
        if ( domain.min && domain.max && *domain.min > *domain.max )
          throw parse_error( attr_path, "min exceeds max" );
        if ( it.value().contains( "choices" ) )
        {
          const auto choices_path = child_path( attr_path, "choices" );
          const auto& choices = require_array( it.value()["choices"], choices_path );
          for ( std::size_t k = 0; k < choices.size(); ++k )
            domain.choices.push_back( require_string( choices[k], child_path( choices_path, k ) ) );
        }
        schema.attributes.emplace( it.key(), std::move( domain ) );
      }
    }
    vocab.nodes.push_back( std::move( schema ) );
  }
  const auto edges_path = child_path( path, "edges" );
  const auto& edges = require_array( require( doc, "edges", path ), edges_path );
  for ( std::size_t i = 0; i < edges.size(); ++i )
  {
    auto label = require_nonempty_string( edges[i], child_path( edges_path, i ) );
    if ( vocab.has_edge_label( label ) )
      throw parse_error( child_path( edges_path, i ), "edge label '" + label + "' declared twice" );
    vocab.edge_labels.push_back( std::move( label ) );
  }
  return vocab;
}

ordered_json vocabulary_to_json( const vocabulary& vocab )
{
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for ( const auto& schema : vocab.nodes )
  {
    ordered_json entry;
    entry["label"] = schema.label;
    entry["attributes"] = ordered_json::object();
    for ( const auto& [name, domain] : schema.attributes )
    {
      ordered_json d;
      d["type"] = type_name( domain.type );
      if ( domain.min )
        d["min"] = *domain.min;
      if ( domain.max )
        d["max"] = *domain.max;
      if ( !domain.choices.empty() )
        d["choices"] = domain.choices;
      entry["attributes"][name] = std::move( d );
    }
    doc["nodes"].push_back( std::move( entry ) );
  }
  doc["edges"] = vocab.edge_labels;
  return doc;
}

design design_from_json( const json& doc, const std::string& path )
{
  reject_unknown_keys( doc, { "nodes", "edges" }, path );
  design d;
  const auto nodes_path = child_path( path, "nodes" );
  const auto& nodes = require_array( require( doc, "nodes", path ), nodes_path );
  std::set<node_id> ids;
  for ( std::size_t i = 0; i < nodes.size(); ++i )
  {
    const auto at = child_path( nodes_path, i );
    reject_unknown_keys( nodes[i], { "id", "label", "attributes" }, at );
    node n;
    auto id = detail::require_integer( require( nodes[i], "id", at ), child_path( at, "id" ) );
    if ( id < 0 || id > std::numeric_limits<node_id>::max() )
      throw parse_error( child_path( at, "id" ), "node id out of range" );
    n.id = static_cast<node_id>( id );
    if ( !ids.insert( n.id ).second )
      throw parse_error( child_path( at, "id" ), "duplicate node id " + std::to_string( id ) );
    n.label = require_nonempty_string( require( nodes[i], "label", at ), child_path( at, "label" ) );
    if ( nodes[i].contains( "attributes" ) )
    {
      const auto attrs_path = child_path( at, "attributes" );
      const auto& attrs = require_object( nodes[i]["attributes"], attrs_path );
      for ( auto it = attrs.begin(); it != attrs.end(); ++it )
        n.attributes.emplace( it.key(), scalar_from_json( it.value(), child_path( attrs_path, it.key() ) ) );
    }
    d.nodes.push_back( std::move( n ) );
  }
  std::sort( d.nodes.begin(), d.nodes.end(), []( const node& a, const node& b ) { return a.id < b.id; } );

  const auto edges_path = child_path( path, "edges" );
  const auto& edges = require_array( require( doc, "edges", path ), edges_path );
  for ( std::size_t i = 0; i < edges.size(); ++i )
  {
    const auto at = child_path( edges_path, i );
    reject_unknown_keys( edges[i], { "source", "target", "label" }, at );
    edge e;
    auto read_end = [&]( const char* key ) {
      auto v = detail::require_integer( require( edges[i], key, at ), child_path( at, key ) );
      if ( v < 0 || !ids.count( static_cast<node_id>( v ) ) )
        throw parse_error( child_path( at, key ), "unknown node id " + std::to_string( v ) );
      return static_cast<node_id>( v );
    };
    e.source = read_end( "source" );
    e.target = read_end( "target" );
    e.label = require_nonempty_string( require( edges[i], "label", at ), child_path( at, "label" ) );
    d.edges.push_back( std::move( e ) );
  }
  return d;
}

ordered_json design_to_json( const design& d )
{
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for ( const auto& n : d.nodes )
  {
    ordered_json entry;
    entry["id"] = n.id;
    entry["label"] = n.label;
    entry["attributes"] = ordered_json::object();
    for ( const auto& [name, value] : n.attributes )
      entry["attributes"][name] = scalar_to_json( value );
    doc["nodes"].push_back( std::move( entry ) );
  }
  doc["edges"] = ordered_json::array();
  for ( const auto& e : d.edges )
    doc["edges"].push_back( { { "source", e.source }, { "target", e.target }, { "label", e.label } } );
  return doc;
}

// Real-typed attributes are stored as doubles even when written as integers.
void coerce_reals( const vocabulary& vocab, design& d )
{
  for ( auto& n : d.nodes )
    if ( const auto* schema = vocab.find_node( n.label ) )
      for ( auto& [name, value] : n.attributes )
        if ( auto it = schema->attributes.find( name ); it != schema->attributes.end() &&
                                                         it->second.type == attribute_type::real &&
                                                         std::holds_alternative<std::int64_t>( value ) )
          value = static_cast<double>( std::get<std::int64_t>( value ) );
}

const std::pair<const char*, compare_op> op_names[] = {
    { "==", compare_op::eq }, { "!=", compare_op::ne }, { "<", compare_op::lt },
    { "<=", compare_op::le }, { ">", compare_op::gt }, { ">=", compare_op::ge } };

const std::pair<const char*, expression::kind> arithmetic_names[] = {
    { "+", expression::kind::add }, { "-", expression::kind::subtract }, { "*", expression::kind::multiply },
    { "/", expression::kind::divide }, { "min", expression::kind::min }, { "max", expression::kind::max } };

expression expression_from_json( const json& doc, const std::string& path )
{
  if ( !doc.is_object() )
    return expression::constant( scalar_from_json( doc, path ) );
  if ( doc.contains( "ref" ) )
  {
    reject_unknown_keys( doc, { "ref", "attr" }, path );
    return expression::attribute_of( require_nonempty_string( doc["ref"], child_path( path, "ref" ) ),
                                     require_nonempty_string( require( doc, "attr", path ), child_path( path, "attr" ) ) );
  }
  reject_unknown_keys( doc, { "op", "args" }, path );
  auto op = require_string( require( doc, "op", path ), child_path( path, "op" ) );
  auto it = std::find_if( std::begin( arithmetic_names ), std::end( arithmetic_names ),
                          [&]( const auto& p ) { return op == p.first; } );
  if ( it == std::end( arithmetic_names ) )
    throw parse_error( child_path( path, "op" ), "unknown operator '" + op + "'" );
  const auto args_path = child_path( path, "args" );
  const auto& args = require_array( require( doc, "args", path ), args_path );
  if ( args.size() != 2 )
    throw parse_error( args_path, "expected exactly two arguments" );
  return expression::binary( it->second, expression_from_json( args[0], child_path( args_path, 0 ) ),
                             expression_from_json( args[1], child_path( args_path, 1 ) ) );
}

ordered_json expression_to_json( const expression& e )
{
  if ( e.op == expression::kind::literal )
    return scalar_to_json( e.literal );
  if ( e.op == expression::kind::reference )
    return { { "ref", e.ref }, { "attr", e.attribute } };
  auto it = std::find_if( std::begin( arithmetic_names ), std::end( arithmetic_names ),
                          [&]( const auto& p ) { return e.op == p.second; } );
  ordered_json doc;
  doc["op"] = it->first;
  doc["args"] = ordered_json::array();
  for ( const auto& operand : e.operands )
    doc["args"].push_back( expression_to_json( operand ) );
  return doc;
}

std::vector<pattern_edge> pattern_edges_from_json( const json& doc, const std::string& path )
{
  std::vector<pattern_edge> edges;
  if ( !doc.contains( "edges" ) )
    return edges;
  const auto edges_path = child_path( path, "edges" );
  const auto& array = require_array( doc["edges"], edges_path );
  for ( std::size_t i = 0; i < array.size(); ++i )
  {
    const auto at = child_path( edges_path, i );
    reject_unknown_keys( array[i], { "source", "target", "label" }, at );
    edges.push_back( { require_nonempty_string( require( array[i], "source", at ), child_path( at, "source" ) ),
                       require_nonempty_string( require( array[i], "target", at ), child_path( at, "target" ) ),
                       require_nonempty_string( require( array[i], "label", at ), child_path( at, "label" ) ) } );
  }
  return edges;
}

ordered_json pattern_edges_to_json( const std::vector<pattern_edge>& edges )
{
  auto array = ordered_json::array();
  for ( const auto& e : edges )
    array.push_back( { { "source", e.source }, { "target", e.target }, { "label", e.label } } );
  return array;
}

rule rule_from_json( const json& doc, const std::string& path )
{
  reject_unknown_keys( doc, { "name", "lhs", "rhs", "anchors" }, path );
  rule r;
  r.name = require_nonempty_string( require( doc, "name", path ), child_path( path, "name" ) );

  const auto lhs_path = child_path( path, "lhs" );
  const auto& lhs = require( doc, "lhs", path );
  reject_unknown_keys( lhs, { "nodes", "edges" }, lhs_path );
  const auto lhs_nodes_path = child_path( lhs_path, "nodes" );
  const auto& lhs_nodes = require_array( require( lhs, "nodes", lhs_path ), lhs_nodes_path );
  for ( std::size_t i = 0; i < lhs_nodes.size(); ++i )
  {
    const auto at = child_path( lhs_nodes_path, i );
    reject_unknown_keys( lhs_nodes[i], { "ref", "label", "predicates" }, at );
    pattern_node p;
    p.ref = require_nonempty_string( require( lhs_nodes[i], "ref", at ), child_path( at, "ref" ) );
    p.label = require_nonempty_string( require( lhs_nodes[i], "label", at ), child_path( at, "label" ) );
    if ( lhs_nodes[i].contains( "predicates" ) )
    {
      const auto preds_path = child_path( at, "predicates" );
      const auto& preds = require_array( lhs_nodes[i]["predicates"], preds_path );
      for ( std::size_t k = 0; k < preds.size(); ++k )
      {
        const auto pat = child_path( preds_path, k );
        reject_unknown_keys( preds[k], { "attr", "op", "value" }, pat );
        attribute_predicate pred;
        pred.attribute = require_nonempty_string( require( preds[k], "attr", pat ), child_path( pat, "attr" ) );
        auto op = require_string( require( preds[k], "op", pat ), child_path( pat, "op" ) );
        auto it = std::find_if( std::begin( op_names ), std::end( op_names ), [&]( const auto& p ) { return op == p.first; } );
        if ( it == std::end( op_names ) )
          throw parse_error( child_path( pat, "op" ), "unknown comparison '" + op + "'" );
        pred.op = it->second;
        pred.operand = scalar_from_json( require( preds[k], "value", pat ), child_path( pat, "value" ) );
        p.predicates.push_back( std::move( pred ) );
      }
    }
    r.lhs_nodes.push_back( std::move( p ) );
  }
  r.lhs_edges = pattern_edges_from_json( lhs, lhs_path );

  const auto rhs_path = child_path( path, "rhs" );
  const auto& rhs = require( doc, "rhs", path );
  reject_unknown_keys( rhs, { "nodes", "edges" }, rhs_path );
  const auto rhs_nodes_path = child_path( rhs_path, "nodes" );
  const auto& rhs_nodes = require_array( require( rhs, "nodes", rhs_path ), rhs_nodes_path );
  for ( std::size_t i = 0; i < rhs_nodes.size(); ++i )
  {
    const auto at = child_path( rhs_nodes_path, i );
    reject_unknown_keys( rhs_nodes[i], { "ref", "label", "attributes" }, at );
    replacement_node p;
    p.ref = require_nonempty_string( require( rhs_nodes[i], "ref", at ), child_path( at, "ref" ) );
    p.label = require_nonempty_string( require( rhs_nodes[i], "label", at ), child_path( at, "label" ) );
    if ( rhs_nodes[i].contains( "attributes" ) )
    {
      const auto attrs_path = child_path( at, "attributes" );
      const auto& attrs = require_object( rhs_nodes[i]["attributes"], attrs_path );
      for ( auto it = attrs.begin(); it != attrs.end(); ++it )
        p.attributes.emplace( it.key(), expression_from_json( it.value(), child_path( attrs_path, it.key() ) ) );
    }
    r.rhs_nodes.push_back( std::move( p ) );
  }
  r.rhs_edges = pattern_edges_from_json( rhs, rhs_path );

  if ( doc.contains( "anchors" ) )
  {
    const auto anchors_path = child_path( path, "anchors" );
    const auto& anchors = require_object( doc["anchors"], anchors_path );
    for ( auto it = anchors.begin(); it != anchors.end(); ++it )
      r.anchors.emplace( it.key(), require_nonempty_string( it.value(), child_path( anchors_path, it.key() ) ) );
  }
  return r;
}

ordered_json rule_to_json( const rule& r )
{
  ordered_json doc;
  doc["name"] = r.name;
  ordered_json lhs;
  lhs["nodes"] = ordered_json::array();
  for ( const auto& p : r.lhs_nodes )
  {
    ordered_json entry;
    entry["ref"] = p.ref;
    entry["label"] = p.label;
    if ( !p.predicates.empty() )
    {
      entry["predicates"] = ordered_json::array();
      for ( const auto& pred : p.predicates )
        entry["predicates"].push_back(
            { { "attr", pred.attribute }, { "op", to_string( pred.op ) }, { "value", scalar_to_json( pred.operand ) } } );
    }
    lhs["nodes"].push_back( std::move( entry ) );
  }
  lhs["edges"] = pattern_edges_to_json( r.lhs_edges );
  doc["lhs"] = std::move( lhs );

  ordered_json rhs;
  rhs["nodes"] = ordered_json::array();
  for ( const auto& p : r.rhs_nodes )
  {
    ordered_json entry;
    entry["ref"] = p.ref;
    entry["label"] = p.label;
    if ( !p.attributes.empty() )
    {
      entry["attributes"] = ordered_json::object();
      for ( const auto& [name, e] : p.attributes )
        entry["attributes"][name] = expression_to_json( e );
    }
    rhs["nodes"].push_back( std::move( entry ) );
  }
  rhs["edges"] = pattern_edges_to_json( r.rhs_edges );
  doc["rhs"] = std::move( rhs );

  doc["anchors"] = ordered_json::object();
  for ( const auto& [from, to] : r.anchors )
    doc["anchors"][from] = to;
  return doc;
}

} // namespace

grammar parse_grammar( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  reject_unknown_keys( doc, { "vocabulary", "rules", "axiom" }, "" );
  grammar g;
  g.vocabulary = vocabulary_from_json( require( doc, "vocabulary", "" ), "/vocabulary" );
  g.axiom = design_from_json( require( doc, "axiom", "" ), "/axiom" );
  coerce_reals( g.vocabulary, g.axiom );
  const auto& rules = require_array( require( doc, "rules", "" ), "/rules" );
  for ( std::size_t i = 0; i < rules.size(); ++i )
  {
    auto r = rule_from_json( rules[i], child_path( "/rules", i ) );
    if ( g.find_rule( r.name ) )
      throw parse_error( child_path( child_path( "/rules", i ), "name" ), "duplicate rule name '" + r.name + "'" );
    g.rules.push_back( std::move( r ) );
  }
  try
  {
    check_grammar( g );
  }
  catch ( const grammar_error& e )
  {
    throw parse_error( "/", e.what() );
  }
  return g;
}

std::string serialize_grammar( const grammar& g )
{
  ordered_json doc;
  doc["vocabulary"] = vocabulary_to_json( g.vocabulary );
  doc["axiom"] = design_to_json( g.axiom );
  doc["rules"] = ordered_json::array();
  for ( const auto& r : g.rules )
    doc["rules"].push_back( rule_to_json( r ) );
  return detail::dump( doc );
}

design parse_design( std::string_view text )
{
  return design_from_json( detail::parse_document( text ), "" );
}

std::string serialize_design( const design& d )
{
  return detail::dump( design_to_json( d ) );
}

} // namespace designkit::grammar
