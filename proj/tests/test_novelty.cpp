#include "novelty_oracle.hpp"
#include "support.hpp"

#include <designkit/novelty.hpp>

#include <doctest.h>

#include <algorithm>

using namespace designkit;
using namespace designkit::novelty;
using designkit::test::oracle_indices;
using designkit::test::read_fixture;

namespace
{

knowledge_base helicopter()
{
  return parse_knowledge_base( read_fixture( "helicopter.kb.json" ) );
}

design_instance quadrocopter()
{
  return parse_design( read_fixture( "quadrocopter.design.json" ) );
}

knowledge_base signal_kb()
{
  return parse_knowledge_base( read_fixture( "signal.kb.json" ) );
}

design_instance radio()
{
  return parse_design( read_fixture( "radio.design.json" ) );
}


} // namespace

TEST_CASE( "innovation index" )
{
  CHECK( innovation_index( helicopter(), quadrocopter() ) == rational( 1 ) );

  design_instance inside;
  inside.assignments = { { "lift_device_count", 1.0 }, { "rotor_diameter_m", 8.5 } };
  CHECK( innovation_index( helicopter(), inside ) == rational( 0 ) );

  const knowledge_base kb( { { "a", variable_domain::of_set( { 1.0, 2.0 } ), {} },
                             { "b", variable_domain::of_interval( 0, 10 ), {} },
                             { "c", variable_domain::of_set( { std::string( "steel" ) } ), {} },
                             { "d", variable_domain::of_set( { true } ), {} } } );
  design_instance one_out;
  one_out.assignments = { { "a", 2.0 }, { "b", 10.0 }, { "c", std::string( "wood" ) }, { "d", true } };
  CHECK( innovation_index( kb, one_out ) == rational( 1, 4 ) );
  CHECK_THROWS_AS( innovation_index( kb, design_instance{} ), error );
}

TEST_CASE( "creativity index" )
{
  CHECK( creativity_index( signal_kb(), radio() ) == rational( 1, 3 ) );
  CHECK( creativity_index( helicopter(), quadrocopter() ) == rational( 0 ) );
  design_instance unknown;
  unknown.assignments = { { "x", 1.0 }, { "y", std::string( "z" ) } };
  CHECK( creativity_index( helicopter(), unknown ) == rational( 1 ) );
  CHECK_THROWS_AS( creativity_index( helicopter(), design_instance{} ), error );
}

TEST_CASE( "assess categories" )
{
  const auto quad = assess( helicopter(), quadrocopter(), true );
  CHECK( quad.category == category::innovative );
  CHECK( quad.innovation == rational( 1 ) );
  CHECK( quad.unexpected == std::vector<std::string>{ "lift_device_count", "torque_counter_count" } );

  const auto r = assess( signal_kb(), radio(), true );
  CHECK( r.category == category::creative );
  CHECK( r.creativity == rational( 1, 3 ) );
  CHECK( r.innovation == rational( 0 ) );
  CHECK( r.new_variables == std::vector<std::string>{ "medium" } );

  CHECK( assess( signal_kb(), radio(), false ).category == category::not_valuable );
  CHECK( assess( helicopter(), quadrocopter(), false ).category == category::not_valuable );

  design_instance routine;
  routine.assignments = { { "lift_device_count", 1.0 } };
  CHECK( assess( helicopter(), routine, true ).category == category::routine );
}

TEST_CASE( "predicate domains admit every value" )
{
  const knowledge_base kb( { { "shape", variable_domain::of_predicate( "any aerodynamic profile" ), {} } } );
  design_instance d;
  d.assignments = { { "shape", std::string( "blob" ) } };
  CHECK( innovation_index( kb, d ) == rational( 0 ) );
}

TEST_CASE( "absorb" )
{
  const auto kb = absorb( helicopter(), quadrocopter() );
  const auto again = assess( kb, quadrocopter(), true );
  CHECK( again.innovation == rational( 0 ) );
  CHECK( again.category == category::routine );

  design_instance routine;
  routine.assignments = { { "lift_device_count", 1.0 }, { "rotor_diameter_m", 10.0 } };
  CHECK( absorb( helicopter(), routine ) == helicopter() );

  const auto widened = absorb( signal_kb(), radio() );
  REQUIRE( widened.find( "medium" ) != nullptr );
  CHECK( widened.find( "medium" )->domain.contains( std::string( "radio_wave" ) ) );
  CHECK( widened.size() == 3 );

  // numeric values outside an interval stretch it
  design_instance thick;
  thick.assignments = { { "wire_gauge", 6.0 } };
  const auto stretched = absorb( signal_kb(), thick );
  CHECK( stretched.find( "wire_gauge" )->domain.contains( 5.0 ) );
}

TEST_CASE( "knowledge base invariants" )
{
  CHECK_THROWS_AS( knowledge_base( { { "a", variable_domain::of_set( { 1.0 } ), {} },
                                     { "a", variable_domain::of_set( { 2.0 } ), {} } } ),
                   error );
  CHECK_THROWS_AS( knowledge_base( { { "a", variable_domain{}, {} } } ), error );
  CHECK_THROWS_AS( knowledge_base( { { "a", variable_domain::of_interval( 2, 1 ), {} } } ), error );
}

TEST_CASE( "parsing" )
{
  CHECK_THROWS_AS( parse_knowledge_base( R"({"variables":[{"name":"a","domain":{"set":[]}}]})" ), parse_error );
  CHECK_THROWS_AS( parse_knowledge_base( R"({"variables":[{"name":"a","domain":{"interval":[3,1]}}]})" ),
                   parse_error );
  CHECK_THROWS_AS( parse_knowledge_base( R"({"variables":[{"name":"a","domain":{}}]})" ), parse_error );
  CHECK_THROWS_AS( parse_design( R"({"assignments":{}})" ), parse_error );
  CHECK_THROWS_AS( parse_design( R"({"assignments":{"a":[1]}})" ), parse_error );
  CHECK_THROWS_AS( parse_design( R"({"assignments":{"a":1,"a":2}})" ), parse_error );

  for ( const char* name : { "helicopter.kb.json", "signal.kb.json" } )
  {
    const auto kb = parse_knowledge_base( read_fixture( name ) );
    CHECK( parse_knowledge_base( serialize_knowledge_base( kb ) ) == kb );
  }
  for ( const char* name : { "quadrocopter.design.json", "radio.design.json" } )
  {
    const auto d = parse_design( read_fixture( name ) );
    CHECK( parse_design( serialize_design( d ) ) == d );
  }
}

TEST_CASE( "property: index bounds, disjoint counting, absorb idempotence" )
{
  std::mt19937 rng( 7 );
  auto pick = [&rng]( int lo, int hi ) { return std::uniform_int_distribution<int>( lo, hi )( rng ); };
  for ( int trial = 0; trial < 400; ++trial )
  {
    std::vector<design_variable> vars;
    const int known = pick( 0, 6 );
    for ( int i = 0; i < known; ++i )
    {
      variable_domain dom;
      switch ( pick( 0, 2 ) )
      {
      case 0: dom = variable_domain::of_set( { double( pick( 0, 3 ) ), double( pick( 0, 3 ) ) } ); break;
      case 1: dom = variable_domain::of_interval( pick( 0, 3 ), pick( 3, 6 ) ); break;
      default: dom = variable_domain::of_set( { std::string( pick( 0, 1 ) ? "x" : "y" ) } ); break;
      }
      vars.push_back( { "k" + std::to_string( i ), dom, {} } );
    }
    const knowledge_base kb( vars );

    design_instance d;
    const int n = pick( 1, 8 );
    for ( int i = 0; i < n; ++i )
    {
      const auto name = ( pick( 0, 2 ) ? "k" : "n" ) + std::to_string( pick( 0, 6 ) );
      value v = pick( 0, 3 ) ? value( double( pick( 0, 8 ) ) ) : value( std::string( pick( 0, 1 ) ? "x" : "z" ) );
      d.assignments[name] = v;
    }

    const auto report = assess( kb, d, true );
    const auto [oi, oc] = oracle_indices( kb, d );
    CHECK( report.innovation == oi );
    CHECK( report.creativity == oc );
    CHECK( report.innovation >= rational( 0 ) );
    CHECK( report.creativity >= rational( 0 ) );
    CHECK( report.innovation + report.creativity <= rational( 1 ) );
    for ( const auto& name : report.new_variables )
      CHECK( std::find( report.unexpected.begin(), report.unexpected.end(), name ) == report.unexpected.end() );

    CHECK( assess( absorb( kb, d ), d, true ).category == category::routine );
  }
}
