#include <designkit/synth.hpp>

#include "json_io.hpp"

#include <algorithm>

namespace designkit::synth
{

using detail::child_path;
using detail::json;
using detail::ordered_json;
using detail::reject_unknown_keys;
using detail::require;
using detail::require_array;
using detail::require_nonempty_string;

namespace
{

std::vector<std::string> read_names( const json& doc, std::string_view key, const std::string& path )
{
  const auto at = child_path( path, key );
  const auto& array = require_array( require( doc, key, path ), at );
  std::vector<std::string> names;
  for ( std::size_t i = 0; i < array.size(); ++i )
  {
    auto name = require_nonempty_string( array[i], child_path( at, i ) );
    if ( std::find( names.begin(), names.end(), name ) != names.end() )
      throw parse_error( child_path( at, i ), "duplicate name '" + name + "'" );
    names.push_back( std::move( name ) );
  }
  return names;
}

std::vector<bool> read_bits( const json& value, std::size_t width, const std::string& path )
{
  const auto& array = require_array( value, path );
  if ( array.size() != width )
    throw parse_error( path, "expected " + std::to_string( width ) + " bits, got " + std::to_string( array.size() ) );
  std::vector<bool> bits;
  for ( std::size_t i = 0; i < array.size(); ++i )
  {
    const auto at = child_path( path, i );
    if ( array[i].is_boolean() )
      bits.push_back( array[i].get<bool>() );
    else
    {
      const auto b = detail::require_integer( array[i], at );
      if ( b != 0 && b != 1 )
        throw parse_error( at, "bit must be 0 or 1" );
      bits.push_back( b == 1 );
    }
  }
  return bits;
}

gate_type read_gate( const json& value, const std::string& path )
{
  const auto name = detail::require_string( value, path );
  for ( auto g : all_gate_types )
    if ( to_string( g ) == name )
      return g;
  throw parse_error( path, "unknown gate '" + name + "'" );
}

signal read_signal( const json& value, const std::vector<std::string>& inputs, std::size_t slot_index,
                    const std::string& path )
{
  if ( value.is_string() )
  {
    const auto name = value.get<std::string>();
    auto it = std::find( inputs.begin(), inputs.end(), name );
    if ( it == inputs.end() )
      throw parse_error( path, "unknown primary input '" + name + "'" );
    return signal::primary( static_cast<std::size_t>( it - inputs.begin() ) );
  }
  const auto ref = detail::require_integer( value, path );
  if ( ref < 0 || static_cast<std::size_t>( ref ) >= slot_index )
    throw parse_error( path, "slot reference must name an earlier slot" );
  return signal::gate( static_cast<std::size_t>( ref ) );
}

// Shared by topologies and circuits; gates are collected when present.
topology read_topology( const json& doc, bool with_gates, std::vector<gate_type>* gates )
{
  reject_unknown_keys( doc, { "inputs", "slots", "outputs" }, "" );
  topology t;
  t.inputs = read_names( doc, "inputs", "" );
  if ( t.inputs.size() > max_inputs )
    throw parse_error( "/inputs", "at most " + std::to_string( max_inputs ) + " primary inputs are supported" );

  const auto& slots = require_array( require( doc, "slots", "" ), "/slots" );
  for ( std::size_t k = 0; k < slots.size(); ++k )
  {
    const auto at = child_path( "/slots", k );
    reject_unknown_keys( slots[k], { "gate", "in" }, at );
    const auto& refs = require_array( require( slots[k], "in", at ), child_path( at, "in" ) );
    if ( refs.size() != 1 && refs.size() != 2 )
      throw parse_error( child_path( at, "in" ), "a slot reads one or two signals" );
    slot s;
    for ( std::size_t i = 0; i < refs.size(); ++i )
      s.inputs.push_back( read_signal( refs[i], t.inputs, k, child_path( child_path( at, "in" ), i ) ) );
    if ( with_gates )
    {
      const auto g = read_gate( require( slots[k], "gate", at ), child_path( at, "gate" ) );
      if ( arity( g ) != s.inputs.size() )
        throw parse_error( child_path( at, "gate" ), std::string( to_string( g ) ) + " does not match the slot arity" );
      gates->push_back( g );
    }
    t.slots.push_back( std::move( s ) );
  }

  const auto& outputs = require_array( require( doc, "outputs", "" ), "/outputs" );
  for ( std::size_t o = 0; o < outputs.size(); ++o )
  {
    const auto at = child_path( "/outputs", o );
    reject_unknown_keys( outputs[o], { "name", "slot" }, at );
    primary_output out;
    out.name = require_nonempty_string( require( outputs[o], "name", at ), child_path( at, "name" ) );
    for ( const auto& prior : t.outputs )
      if ( prior.name == out.name )
        throw parse_error( child_path( at, "name" ), "duplicate output '" + out.name + "'" );
    const auto slot_index = detail::require_integer( require( outputs[o], "slot", at ), child_path( at, "slot" ) );
    if ( slot_index < 0 || static_cast<std::size_t>( slot_index ) >= t.slots.size() )
      throw parse_error( child_path( at, "slot" ), "no such slot" );
    out.slot = static_cast<std::size_t>( slot_index );
    t.outputs.push_back( std::move( out ) );
  }

  try
  {
    check_topology( t );
  }
  catch ( const parse_error& )
  {
    throw;
  }
  catch ( const error& e )
  {
    throw parse_error( "/", e.what() );
  }
  return t;
}

ordered_json write_topology( const topology& t, const std::vector<gate_type>* gates )
{
  ordered_json doc;
  doc["inputs"] = t.inputs;
  doc["slots"] = ordered_json::array();
  for ( std::size_t k = 0; k < t.slots.size(); ++k )
  {
    ordered_json s;
    if ( gates )
      s["gate"] = std::string( to_string( ( *gates )[k] ) );
    s["in"] = ordered_json::array();
    for ( const auto& in : t.slots[k].inputs )
    {
      if ( in.source == signal::kind::input )
        s["in"].push_back( t.inputs[in.index] );
      else
        s["in"].push_back( in.index );
    }
    doc["slots"].push_back( std::move( s ) );
  }
  doc["outputs"] = ordered_json::array();
  for ( const auto& o : t.outputs )
    doc["outputs"].push_back( { { "name", o.name }, { "slot", o.slot } } );
  return doc;
}

} // namespace

requirement parse_requirement( std::string_view text )
{
  const auto doc = detail::parse_document( text );
  reject_unknown_keys( doc, { "inputs", "outputs", "rows" }, "" );
  auto inputs = read_names( doc, "inputs", "" );
  auto outputs = read_names( doc, "outputs", "" );
  if ( inputs.size() > max_inputs )
    throw parse_error( "/inputs", "at most " + std::to_string( max_inputs ) + " primary inputs are supported" );
  if ( outputs.empty() )
    throw parse_error( "/outputs", "at least one output is required" );
  for ( const auto& name : outputs )
    if ( std::find( inputs.begin(), inputs.end(), name ) != inputs.end() )
      throw parse_error( "/outputs", "'" + name + "' is both an input and an output" );

  const std::size_t n = inputs.size();
  const std::size_t row_count = std::size_t{ 1 } << n;
  const auto& rows = require_array( require( doc, "rows", "" ), "/rows" );
  if ( rows.size() != row_count )
    throw parse_error( "/rows", "truth table needs " + std::to_string( row_count ) + " rows, got " +
                                    std::to_string( rows.size() ) );

  std::vector<std::vector<bool>> table( row_count );
  std::vector<bool> seen( row_count, false );
  for ( std::size_t i = 0; i < rows.size(); ++i )
  {
    const auto at = child_path( "/rows", i );
    reject_unknown_keys( rows[i], { "in", "out" }, at );
    const auto in = read_bits( require( rows[i], "in", at ), n, child_path( at, "in" ) );
    std::size_t row = 0;
    for ( bool b : in )
      row = ( row << 1 ) | ( b ? 1u : 0u );
    if ( seen[row] )
      throw parse_error( child_path( at, "in" ), "input combination listed twice" );
    seen[row] = true;
    table[row] = read_bits( require( rows[i], "out", at ), outputs.size(), child_path( at, "out" ) );
  }
  return requirement::from_rows( std::move( inputs ), std::move( outputs ), table );
}

std::string serialize_requirement( const requirement& r )
{
  const auto n = r.inputs.size();
  ordered_json doc;
  doc["inputs"] = r.inputs;
  doc["outputs"] = r.outputs;
  doc["rows"] = ordered_json::array();
  for ( std::size_t row = 0; row < r.rows(); ++row )
  {
    auto in = ordered_json::array();
    for ( std::size_t i = 0; i < n; ++i )
      in.push_back( ( row >> ( n - 1 - i ) ) & 1u );
    auto out = ordered_json::array();
    for ( std::size_t o = 0; o < r.outputs.size(); ++o )
      out.push_back( r.expected( row, o ) ? 1 : 0 );
    doc["rows"].push_back( { { "in", std::move( in ) }, { "out", std::move( out ) } } );
  }
  return detail::dump( doc );
}

topology parse_topology( std::string_view text )
{
  return read_topology( detail::parse_document( text ), false, nullptr );
}

std::string serialize_topology( const topology& t )
{
  return detail::dump( write_topology( t, nullptr ) );
}

circuit parse_circuit( std::string_view text )
{
  circuit c;
  c.topology = read_topology( detail::parse_document( text ), true, &c.gates );
  return c;
}

std::string serialize_circuit( const circuit& c )
{
  return detail::dump( write_topology( c.topology, &c.gates ) );
}

} // namespace designkit::synth
