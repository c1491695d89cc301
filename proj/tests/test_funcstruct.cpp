#include "support.hpp"

#include <designkit/funcstruct.hpp>

#include <doctest.h>

#include <algorithm>

using namespace designkit;
using namespace designkit::funcstruct;
using designkit::test::fixture_structure;
using designkit::test::oracle_pi;
using designkit::test::read_fixture;

namespace
{

function_structure chain( std::size_t n )
{
  function_structure fs;
  fs.terminals = { { "in", terminal_kind::input, "x" }, { "out", terminal_kind::output, "x" } };
  std::string prev = "in";
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto id = "v" + std::to_string( i );
    fs.vertices.push_back( { id, "step" } );
    fs.flows.push_back( { prev, id, "x" } );
    prev = id;
  }
  fs.flows.push_back( { prev, "out", "x" } );
  return fs;
}

} // namespace

TEST_CASE( "validate accepts a two-vertex chain" )
{
  CHECK( validate( chain( 2 ) ).ok() );
}

TEST_CASE( "validate reports a two-vertex cycle" )
{
  auto fs = chain( 2 );
  fs.flows.push_back( { "v1", "v0", "back" } );
  const auto report = validate( fs );
  CHECK( report.has( violation_kind::cycle ) );
}

TEST_CASE( "validate reports a vertex without a path to an output" )
{
  auto fs = chain( 1 );
  fs.vertices.push_back( { "dead", "dead end" } );
  fs.flows.push_back( { "v0", "dead", "x" } );
  const auto report = validate( fs );
  REQUIRE( report.has( violation_kind::not_connected ) );
  CHECK( std::any_of( report.violations.begin(), report.violations.end(),
                      []( const violation& v ) { return v.subject == "dead"; } ) );
}

TEST_CASE( "validate lists every violation" )
{
  function_structure fs;
  fs.terminals = { { "in", terminal_kind::input, "x" }, { "out", terminal_kind::output, "x" } };
  fs.vertices = { { "a", "first" }, { "a", "dup" } };
  fs.flows = { { "in", "out", "" }, { "a", "ghost", "x" }, { "out", "a", "x" } };
  const auto report = validate( fs );
  CHECK( report.has( violation_kind::duplicate_id ) );
  CHECK( report.has( violation_kind::empty_label ) );
  CHECK( report.has( violation_kind::terminal_to_terminal ) );
  CHECK( report.has( violation_kind::unknown_endpoint ) );
  CHECK( report.has( violation_kind::output_terminal_has_outgoing ) );
  CHECK( validate( function_structure{} ).has( violation_kind::empty_structure ) );
}

TEST_CASE( "black box validation" )
{
  CHECK( validate( black_box{ "bridge", { "a" }, { "b" } } ).ok() );
  CHECK( validate( black_box{ "x", {}, { "b" } } ).has( violation_kind::black_box_without_input ) );
  CHECK( validate( black_box{ "x", { "a" }, {} } ).has( violation_kind::black_box_without_output ) );
}

TEST_CASE( "degree counts boundary flows" )
{
  const auto coffee = fixture_structure( "coffee_maker.fs.json" );
  const auto it = std::find_if( coffee.vertices.begin(), coffee.vertices.end(),
                                []( const auto& v ) { return v.label == "lead water through coffee powder"; } );
  REQUIRE( it != coffee.vertices.end() );
  CHECK( degree( coffee, it->id ) == 3 );
  CHECK( degree( chain( 3 ), "v1" ) == 2 );
  CHECK( degree( fixture_structure( "full_subtractor.fs.json" ), "xor1" ) == 4 );
  CHECK_THROWS_AS( degree( chain( 1 ), "nope" ), error );
  CHECK_THROWS_AS( degree( chain( 1 ), "in" ), error );
}

TEST_CASE( "interdependency index of the bundled problems" )
{
  const auto subtractor = fixture_structure( "full_subtractor.fs.json" );
  CHECK( interdependency_index( subtractor ) == rational( 5, 7 ) );
  CHECK( oracle_pi( subtractor ) == rational( 5, 7 ) );

  const auto coil = fixture_structure( "coil_winder.fs.json" );
  CHECK( coil.vertices.size() == 28 );
  CHECK( interdependency_terms( coil ).high_degree == 12 );
  CHECK( interdependency_index( coil ) == rational( 3, 7 ) );

  CHECK( interdependency_index( parse_structure( read_fixture( "bridge.fs.json" ) ) ) == rational( 1 ) );
  CHECK( interdependency_index( parse_structure( read_fixture( "rope.fs.json" ) ) ) == rational( 0 ) );
  CHECK( interdependency_index( black_box{ "", { "a", "b" }, { "c" } } ) == rational( 1 ) );
}

TEST_CASE( "interdependency index rejects invalid structures" )
{
  auto fs = chain( 2 );
  fs.flows.push_back( { "v1", "v0", "back" } );
  CHECK_THROWS_AS( interdependency_index( fs ), invalid_structure );
}

TEST_CASE( "parse_structure" )
{
  SUBCASE( "bundled subtractor" )
  {
    const auto p = parse_structure( read_fixture( "full_subtractor.fs.json" ) );
    REQUIRE( is_decomposable( p ) );
    CHECK( std::get<function_structure>( p ).vertices.size() == 7 );
  }
  SUBCASE( "empty document" )
  {
    CHECK_THROWS_AS( parse_structure( "" ), parse_error );
    CHECK_THROWS_AS( parse_structure( "  \n" ), parse_error );
  }
  SUBCASE( "duplicate ids carry a location" )
  {
    try
    {
      parse_structure( R"({"kind":"structure","vertices":[{"id":"a","label":"x"},{"id":"a","label":"y"}],
                           "terminals":[],"flows":[]})" );
      FAIL( "expected parse_error" );
    }
    catch ( const parse_error& e )
    {
      CHECK( e.location() == "/vertices/1/id" );
    }
  }
  SUBCASE( "schema violations" )
  {
    CHECK_THROWS_AS( parse_structure( R"({"kind":"cube"})" ), parse_error );
    CHECK_THROWS_AS( parse_structure( R"({"kind":"blackbox","inputs":[],"outputs":["a"]})" ), parse_error );
    CHECK_THROWS_AS( parse_structure( R"({"kind":"structure","vertices":[],"terminals":[],"flows":[],"x":1})" ),
                     parse_error );
    CHECK_THROWS_AS( parse_structure( R"({"kind":"structure","kind":"structure"})" ), parse_error );
    CHECK_THROWS_AS( parse_structure( R"({"kind":"structure","vertices":[{"id":"a","label":"x"}],"terminals":[],
                                          "flows":[{"source":"a","target":"zz","label":"f"}]})" ),
                     parse_error );
    CHECK_THROWS_AS( parse_structure( "{\"kind\":" ), parse_error );
  }
}

TEST_CASE( "round trip of every structure fixture" )
{
  for ( const char* name : { "full_subtractor.fs.json", "coil_winder.fs.json", "coffee_maker.fs.json", "bridge.fs.json",
                              "rope.fs.json" } )
  {
    CAPTURE( name );
    const auto text = read_fixture( name );
    const auto p = parse_structure( text );
    const auto again = serialize_structure( p );
    CHECK( parse_structure( again ) == p );
    CHECK( serialize_structure( parse_structure( again ) ) == again );
  }
}

TEST_CASE( "property: PI bounds, oracle agreement and relabeling invariance" )
{
  std::mt19937 rng( 20240601 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    auto fs = designkit::test::random_structure( rng );
    REQUIRE( validate( fs ).ok() );
    const auto pi = interdependency_index( fs );
    CHECK( pi >= rational( 0 ) );
    CHECK( pi <= rational( 1 ) );
    CHECK( pi == oracle_pi( fs ) );

    // degree equals a brute-force count of incident flow records
    const auto ds = degrees( fs );
    for ( std::size_t i = 0; i < fs.vertices.size(); ++i )
    {
      const auto& id = fs.vertices[i].id;
      const auto count = std::count_if( fs.flows.begin(), fs.flows.end(),
                                        [&]( const flow& f ) { return f.source == id; } ) +
                         std::count_if( fs.flows.begin(), fs.flows.end(),
                                        [&]( const flow& f ) { return f.target == id; } );
      CHECK( ds[i] == static_cast<std::size_t>( count ) );
    }

    auto renamed = fs;
    auto rename = []( std::string& id ) {
      if ( id.front() == 'v' )
        id = "node_" + id + "_x";
    };
    for ( auto& v : renamed.vertices )
      rename( v.id );
    for ( auto& f : renamed.flows )
    {
      rename( f.source );
      rename( f.target );
    }
    std::shuffle( renamed.flows.begin(), renamed.flows.end(), rng );
    std::shuffle( renamed.vertices.begin(), renamed.vertices.end(), rng );
    CHECK( interdependency_index( renamed ) == pi );

    // splicing a degree-2 vertex into a flow never raises PI
    auto refined = fs;
    const auto at = std::uniform_int_distribution<std::size_t>( 0, refined.flows.size() - 1 )( rng );
    const auto target = refined.flows[at].target;
    refined.flows[at].target = "splice";
    refined.vertices.push_back( { "splice", "spliced step" } );
    refined.flows.push_back( { "splice", target, refined.flows[at].label } );
    REQUIRE( validate( refined ).ok() );
    const auto before = interdependency_terms( fs ), after = interdependency_terms( refined );
    CHECK( after.high_degree == before.high_degree );
    CHECK( after.vertices == before.vertices + 1 );
    CHECK( interdependency_index( refined ) <= pi );
  }
}

TEST_CASE( "chains have PI 0 and fully interconnected structures PI 1" )
{
  for ( std::size_t n = 1; n < 6; ++n )
    CHECK( interdependency_index( chain( n ) ) == rational( 0 ) );

  function_structure dense;
  dense.terminals = { { "in", terminal_kind::input, "x" }, { "out", terminal_kind::output, "x" } };
  dense.vertices = { { "a", "a" }, { "b", "b" } };
  dense.flows = { { "in", "a", "x" }, { "in", "a", "y" }, { "a", "b", "x" }, { "a", "b", "y" }, { "b", "out", "x" } };
  CHECK( interdependency_index( dense ) == rational( 1 ) );
}
