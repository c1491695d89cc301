#include "support.hpp"
#include "synth_oracle.hpp"

#include <designkit/synth.hpp>

#include <doctest.h>

#include <array>
#include <functional>
#include <map>
#include <set>

using namespace designkit;
using namespace designkit::synth;
using designkit::test::oracle_pi;
using designkit::test::bit_of;
using designkit::test::brute_force;
using designkit::test::read_fixture;

namespace
{

requirement subtractor()
{
  return parse_requirement( read_fixture( "subtractor.req.json" ) );
}

requirement single_output( std::size_t n, std::uint64_t table )
{
  requirement r;
  for ( std::size_t i = 0; i < n; ++i )
    r.inputs.push_back( std::string( 1, static_cast<char>( 'a' + i ) ) );
  r.outputs = { "f" };
  r.tables = { table };
  return r;
}

circuit xor_circuit()
{
  circuit c;
  c.topology.inputs = { "a", "b" };
  c.topology.slots = { { { signal::primary( 0 ), signal::primary( 1 ) } } };
  c.topology.outputs = { { "y", 0 } };
  c.gates = { gate_type::xor_gate };
  return c;
}

} // namespace

TEST_CASE( "gate vocabulary" )
{
  CHECK( arity( gate_type::identity ) == 1 );
  CHECK( arity( gate_type::not_gate ) == 1 );
  CHECK( arity( gate_type::xor_gate ) == 2 );
  CHECK( to_string( gate_type::or_gate ) == "OR" );
}

TEST_CASE( "evaluate" )
{
  const auto c = xor_circuit();
  CHECK( evaluate( c, { false, false } ) == std::vector<bool>{ false } );
  CHECK( evaluate( c, { true, false } ) == std::vector<bool>{ true } );
  CHECK( evaluate( c, { true, true } ) == std::vector<bool>{ false } );
  CHECK_THROWS_AS( evaluate( c, { true } ), error );

  CHECK( satisfies( c, single_output( 2, 0b0110 ) ) );
  CHECK( !satisfies( c, single_output( 2, 0b1000 ) ) );
}

TEST_CASE( "requirement rows follow the binary count" )
{
  const auto r = requirement::from_rows( { "a", "b" }, { "y" }, { { false }, { false }, { false }, { true } } );
  CHECK( r.tables == std::vector<std::uint64_t>{ 0b1000 } );
  CHECK( r.expected( 3, 0 ) );
  const auto sub = subtractor();
  CHECK( sub.rows() == 8 );
  // row 1 is A=0, B=0, Bin=1: difference 1, borrow 1
  CHECK( sub.expected( 1, 0 ) );
  CHECK( sub.expected( 1, 1 ) );
  for ( std::size_t row = 0; row < 8; ++row )
  {
    const int a = bit_of( row, 0, 3 ), b = bit_of( row, 1, 3 ), bin = bit_of( row, 2, 3 );
    const int diff = a - b - bin;
    CHECK( sub.expected( row, 0 ) == bool( diff & 1 ) );
    CHECK( sub.expected( row, 1 ) == ( diff < 0 ) );
  }
}

TEST_CASE( "topology checks" )
{
  auto c = xor_circuit();
  CHECK_NOTHROW( check_circuit( c ) );
  c.gates = { gate_type::not_gate };
  CHECK_THROWS_AS( check_circuit( c ), error );

  topology t = xor_circuit().topology;
  t.slots.push_back( { { signal::gate( 5 ) } } );
  CHECK_THROWS_AS( check_topology( t ), error );
  t = xor_circuit().topology;
  t.slots.push_back( { { signal::primary( 0 ) } } ); // dead slot
  CHECK_THROWS_AS( check_topology( t ), error );
  t = xor_circuit().topology;
  t.slots[0].inputs.clear();
  CHECK_THROWS_AS( check_topology( t ), error );
}

TEST_CASE( "gate assignment on the textbook subtractor netlist" )
{
  const auto topo = parse_topology( read_fixture( "subtractor.topo.json" ) );
  const auto r = subtractor();
  const auto c = synthesize_assignment( topo, r );
  REQUIRE( c.has_value() );
  CHECK( c->size() == 7 );
  CHECK( c->topology == topo );
  CHECK( satisfies( *c, r ) );
  const auto fs = to_function_structure( *c );
  CHECK( funcstruct::validate( fs ).ok() );
  CHECK( funcstruct::interdependency_index( fs ) == rational( 5, 7 ) );
  CHECK( oracle_pi( fs ) == rational( 5, 7 ) );

  // the same netlist cannot realize a constant-one difference
  auto ones = r;
  ones.tables[0] = 0xff;
  CHECK( !synthesize_assignment( topo, ones ).has_value() );

  auto narrow = r;
  narrow.outputs.pop_back();
  narrow.tables.pop_back();
  CHECK_THROWS_AS( synthesize_assignment( topo, narrow ), error );
}

TEST_CASE( "assignment search is lexicographically first" )
{
  // two binary slots over (a, b); output reads slot 1, which reads slot 0 and b
  topology t;
  t.inputs = { "a", "b" };
  t.slots = { { { signal::primary( 0 ), signal::primary( 1 ) } }, { { signal::gate( 0 ), signal::primary( 1 ) } } };
  t.outputs = { { "y", 1 } };
  const auto r = single_output( 2, 0b1010 ); // y = b
  const auto c = synthesize_assignment( t, r );
  REQUIRE( c.has_value() );
  CHECK( satisfies( *c, r ) );

  // independent check: enumerate all 9 assignments in vocabulary order
  std::optional<std::vector<gate_type>> first;
  for ( auto g0 : { gate_type::and_gate, gate_type::or_gate, gate_type::xor_gate } )
    for ( auto g1 : { gate_type::and_gate, gate_type::or_gate, gate_type::xor_gate } )
      if ( !first && satisfies( circuit{ t, { g0, g1 } }, r ) )
        first = std::vector<gate_type>{ g0, g1 };
  REQUIRE( first.has_value() );
  CHECK( c->gates == *first );
}

TEST_CASE( "minimum gate counts match exhaustive search: two inputs" )
{
  const brute_force oracle( 2, 3 );
  for ( std::uint64_t table = 0; table < 16; ++table )
  {
    CAPTURE( table );
    const auto r = single_output( 2, table );
    const auto c = synthesize_topology( r, 3 );
    const auto it = oracle.single.find( table );
    REQUIRE( c.has_value() == ( it != oracle.single.end() ) );
    if ( c )
    {
      CHECK( c->size() == it->second );
      CHECK( satisfies( *c, r ) );
      CHECK_NOTHROW( check_circuit( *c ) );
    }
  }
  for ( std::uint64_t t0 = 0; t0 < 16; t0 += 3 )
    for ( std::uint64_t t1 = 0; t1 < 16; t1 += 5 )
    {
      CAPTURE( t0 );
      CAPTURE( t1 );
      requirement r = single_output( 2, t0 );
      r.outputs = { "f", "g" };
      r.tables = { t0, t1 };
      const auto c = synthesize_topology( r, 3 );
      const auto it = oracle.pairs.find( { t0, t1 } );
      REQUIRE( c.has_value() == ( it != oracle.pairs.end() ) );
      if ( c )
      {
        CHECK( c->size() == it->second );
        CHECK( satisfies( *c, r ) );
      }
    }
}

TEST_CASE( "minimum gate counts match exhaustive search: three inputs" )
{
  const brute_force oracle( 3, 3 );
  std::mt19937 rng( 3 );
  std::set<std::uint64_t> tables{ 0x00, 0xff, 0x96, 0x80, 0xfe, 0xe8, 0x0f };
  while ( tables.size() < 40 )
    tables.insert( std::uniform_int_distribution<std::uint64_t>( 0, 255 )( rng ) );
  for ( auto table : tables )
  {
    CAPTURE( table );
    const auto r = single_output( 3, table );
    const auto c = synthesize_topology( r, 3 );
    const auto it = oracle.single.find( table );
    REQUIRE( c.has_value() == ( it != oracle.single.end() ) );
    if ( c )
    {
      CHECK( c->size() == it->second );
      CHECK( satisfies( *c, r ) );
    }
  }
}

TEST_CASE( "full subtractor synthesis" )
{
  const auto r = subtractor();
  search_statistics stats;
  const auto c = synthesize_topology( r, 7, &stats );
  REQUIRE( c.has_value() );
  CHECK( satisfies( *c, r ) );
  CHECK( c->size() <= 7 );
  CHECK( c->size() == 5 ); // regression value; every row is checked above
  CHECK( stats.gate_count == c->size() );
  CHECK( stats.topologies > 0 );
  const auto fs = to_function_structure( *c );
  CHECK( funcstruct::validate( fs ).ok() );
  CHECK( funcstruct::interdependency_index( fs ) == oracle_pi( fs ) );

  CHECK( !synthesize_topology( r, 4 ).has_value() );
  CHECK_THROWS_AS( synthesize_topology( r, 0 ), error );
}

TEST_CASE( "parity needs more than one gate" )
{
  const auto r = parse_requirement( read_fixture( "parity3.req.json" ) );
  CHECK( !synthesize_topology( r, 1 ).has_value() );
  const auto c = synthesize_topology( r, 2 );
  REQUIRE( c.has_value() );
  CHECK( c->size() == 2 );
  CHECK( satisfies( *c, r ) );
}

TEST_CASE( "function structures of circuits" )
{
  // a single gate reading two inputs: degree 3, PI 1
  CHECK( funcstruct::interdependency_index( to_function_structure( xor_circuit() ) ) == rational( 1 ) );

  // a NOT chain: every gate has degree 2, PI 0
  circuit chain;
  chain.topology.inputs = { "a" };
  chain.topology.slots = { { { signal::primary( 0 ) } }, { { signal::gate( 0 ) } }, { { signal::gate( 1 ) } } };
  chain.topology.outputs = { { "y", 2 } };
  chain.gates = { gate_type::not_gate, gate_type::not_gate, gate_type::identity };
  const auto fs = to_function_structure( chain );
  CHECK( fs.vertices.size() == 3 );
  CHECK( fs.flows.size() == 4 );
  CHECK( funcstruct::interdependency_index( fs ) == rational( 0 ) );
  CHECK( evaluate( chain, { true } ) == std::vector<bool>{ true } );
}

TEST_CASE( "synthesis files" )
{
  const auto r = subtractor();
  CHECK( parse_requirement( serialize_requirement( r ) ) == r );
  const auto t = parse_topology( read_fixture( "subtractor.topo.json" ) );
  CHECK( parse_topology( serialize_topology( t ) ) == t );
  const auto c = *synthesize_assignment( t, r );
  CHECK( parse_circuit( serialize_circuit( c ) ) == c );

  CHECK_THROWS_AS( parse_requirement( R"({"inputs":["a"],"outputs":["y"],"rows":[{"in":[0],"out":[1]}]})" ),
                   parse_error );
  CHECK_THROWS_AS(
      parse_requirement(
          R"({"inputs":["a"],"outputs":["a"],"rows":[{"in":[0],"out":[1]},{"in":[1],"out":[0]}]})" ),
      parse_error );
  CHECK_THROWS_AS(
      parse_requirement(
          R"({"inputs":["a"],"outputs":["y"],"rows":[{"in":[0],"out":[1]},{"in":[0],"out":[0]}]})" ),
      parse_error );
  CHECK_THROWS_AS( parse_circuit( R"({"inputs":["a"],"slots":[{"in":["a"]}],"outputs":[{"name":"y","slot":0}]})" ),
                   parse_error );
  CHECK_THROWS_AS(
      parse_circuit( R"({"inputs":["a"],"slots":[{"gate":"AND","in":["a"]}],"outputs":[{"name":"y","slot":0}]})" ),
      error );
}

TEST_CASE( "property: synthesized circuits satisfy random requirements" )
{
  std::mt19937 rng( 11 );
  for ( int trial = 0; trial < 25; ++trial )
  {
    const std::size_t n = std::uniform_int_distribution<std::size_t>( 1, 3 )( rng );
    const auto rows = std::size_t{ 1 } << n;
    const auto table = std::uniform_int_distribution<std::uint64_t>( 0, ( 1ull << rows ) - 1 )( rng );
    const auto r = single_output( n, table );
    const auto c = synthesize_topology( r, 4 );
    if ( !c )
      continue;
    CHECK( satisfies( *c, r ) );
    for ( std::size_t row = 0; row < rows; ++row )
    {
      std::vector<bool> bits( n );
      for ( std::size_t i = 0; i < n; ++i )
        bits[i] = bit_of( row, i, n );
      CHECK( evaluate( *c, bits ).front() == bool( ( table >> row ) & 1 ) );
    }
    const auto fs = to_function_structure( *c );
    CHECK( funcstruct::validate( fs ).ok() );
  }
}
