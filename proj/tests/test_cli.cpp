#include "support.hpp"

#include <cli.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using designkit::test::fixture_path;
using designkit::test::read_fixture;

namespace
{

struct outcome
{
  int code;
  std::string out;
  std::string err;
};

outcome run( std::vector<std::string> args )
{
  std::ostringstream out, err;
  const int code = designkit::cli::run( args, out, err );
  return { code, out.str(), err.str() };
}

std::string fx( const char* name )
{
  return fixture_path( name );
}

} // namespace

TEST_CASE( "metrics" )
{
  const auto r = run( { "metrics", fx( "full_subtractor.fs.json" ) } );
  CHECK( r.code == 0 );
  CHECK( r.out.find( "PI = 5/7" ) != std::string::npos );
  CHECK( r.out.find( "vertices with degree > 2: 5 of 7" ) != std::string::npos );

  const auto coil = run( { "metrics", "--format", "json", fx( "coil_winder.fs.json" ) } );
  CHECK( coil.code == 0 );
  CHECK( coil.out.find( "\"exact\": \"3/7\"" ) != std::string::npos );

  const auto bridge = run( { "--format", "json", "metrics", fx( "bridge.fs.json" ) } );
  CHECK( bridge.out.find( "\"decomposable\": false" ) != std::string::npos );
  CHECK( bridge.out.find( "\"exact\": \"1\"" ) != std::string::npos );
}

TEST_CASE( "json output is byte-identical across runs" )
{
  const std::vector<std::vector<std::string>> commands{
      { "metrics", "--format", "json", fx( "coffee_maker.fs.json" ) },
      { "novelty", "--format", "json", fx( "helicopter.kb.json" ), fx( "quadrocopter.design.json" ) },
      { "grammar-generate", "--format", "json", fx( "shaft.grammar.json" ), "--max-depth", "2" },
      { "cbr-retrieve", "--format", "json", fx( "coil_winder.cases.json" ), fx( "coil_winder.fs.json" ) },
      { "synth", "--format", "json", fx( "subtractor.req.json" ), "--topology", fx( "subtractor.topo.json" ) },
      { "classify", "--format", "json", fx( "innovative.profile.json" ) } };
  for ( const auto& cmd : commands )
  {
    CAPTURE( cmd.front() );
    const auto a = run( cmd ), b = run( cmd );
    CHECK( a.code == 0 );
    CHECK( !a.out.empty() );
    CHECK( a.out == b.out );
  }
}

TEST_CASE( "novelty" )
{
  const auto quad = run( { "novelty", fx( "helicopter.kb.json" ), fx( "quadrocopter.design.json" ) } );
  CHECK( quad.code == 0 );
  CHECK( quad.out.find( "I = 1 " ) != std::string::npos );
  CHECK( quad.out.find( "category: innovative" ) != std::string::npos );

  const auto radio = run( { "novelty", fx( "signal.kb.json" ), fx( "radio.design.json" ) } );
  CHECK( radio.out.find( "C = 1/3" ) != std::string::npos );
  CHECK( radio.out.find( "category: creative" ) != std::string::npos );

  const auto infeasible =
      run( { "novelty", fx( "signal.kb.json" ), fx( "radio.design.json" ), "--feasible", "false" } );
  CHECK( infeasible.out.find( "not" ) != std::string::npos );
}

TEST_CASE( "grammar-generate" )
{
  const auto r = run( { "grammar-generate", fx( "shaft.grammar.json" ), "--max-depth", "3" } );
  CHECK( r.code == 0 );
  CHECK( r.out.rfind( "78 designs", 0 ) == 0 );
  const auto capped = run( { "grammar-generate", fx( "shaft.grammar.json" ), "--max-designs", "5" } );
  CHECK( capped.out.rfind( "5 designs", 0 ) == 0 );
  const auto dot = run( { "grammar-generate", fx( "gearbox.grammar.json" ), "--max-depth", "1", "--dot" } );
  CHECK( dot.out.find( "digraph" ) != std::string::npos );
  CHECK( run( { "grammar-generate", fx( "shaft.grammar.json" ), "--max-depth", "0" } ).code == 2 );
}

TEST_CASE( "cbr" )
{
  const auto r = run( { "cbr", "retrieve", fx( "coil_winder.cases.json" ), fx( "coil_winder.fs.json" ), "--simspec",
                        fx( "default.simspec.json" ), "--requirements", fx( "coil_winder.requirements.json" ) } );
  CHECK( r.code == 0 );
  CHECK( r.out.rfind( "1. fishing_reel", 0 ) == 0 );
  CHECK( r.out.find( "spool -> v16" ) != std::string::npos );
  CHECK( r.out.find( "[open] bobbin clamp" ) != std::string::npos );

  const auto flat = run( { "cbr-retrieve", fx( "coil_winder.cases.json" ), fx( "coil_winder.fs.json" ), "-k", "1",
                           "--simspec", fx( "default.simspec.json" ), "--requirements",
                           fx( "coil_winder.requirements.json" ) } );
  CHECK( flat.out.find( "2. " ) == std::string::npos );
  CHECK( flat.out.find( "spool -> v16" ) != std::string::npos );

  const auto empty = std::filesystem::temp_directory_path() / "designkit_empty.cases.json";
  {
    std::FILE* f = std::fopen( empty.string().c_str(), "w" );
    REQUIRE( f );
    std::fputs( "[]", f );
    std::fclose( f );
  }
  CHECK( run( { "cbr-retrieve", empty.string(), fx( "coil_winder.fs.json" ) } ).code == 1 );
  std::filesystem::remove( empty );
  CHECK( run( { "cbr-retrieve", fx( "coil_winder.cases.json" ), fx( "bridge.fs.json" ) } ).code == 2 );
}

TEST_CASE( "synth" )
{
  const auto fixed = run( { "synth", fx( "subtractor.req.json" ), "--topology", fx( "subtractor.topo.json" ) } );
  CHECK( fixed.code == 0 );
  CHECK( fixed.out.rfind( "SAT: 7 gates, PI = 5/7", 0 ) == 0 );

  const auto unsat = run( { "synth", "--format", "json", fx( "parity3.req.json" ), "--max-gates", "1" } );
  CHECK( unsat.code == 1 );
  CHECK( unsat.out.find( "unsat" ) != std::string::npos );

  const auto fs_out = std::filesystem::temp_directory_path() / "designkit_parity.fs.json";
  const auto sat = run( { "synth", fx( "parity3.req.json" ), "--max-gates", "2", "--fs-out", fs_out.string() } );
  CHECK( sat.code == 0 );
  CHECK( run( { "metrics", fs_out.string() } ).code == 0 );
  std::filesystem::remove( fs_out );
}

TEST_CASE( "classify" )
{
  const auto creative = run( { "classify", fx( "creative.profile.json" ) } );
  CHECK( creative.code == 1 );
  CHECK( creative.out.find( "no applicable method" ) != std::string::npos );
  const auto innovative = run( { "classify", fx( "innovative.profile.json" ) } );
  CHECK( innovative.code == 0 );
  CHECK( innovative.out.find( "analogy" ) != std::string::npos );
}

TEST_CASE( "input errors exit with code 2" )
{
  CHECK( run( {} ).code == 2 );
  CHECK( run( { "bogus" } ).code == 2 );
  CHECK( run( { "metrics", "--bogus", fx( "rope.fs.json" ) } ).code == 2 );
  const auto missing = run( { "metrics", "/nonexistent/file.fs.json" } );
  CHECK( missing.code == 2 );
  CHECK( missing.err.find( "/nonexistent/file.fs.json" ) != std::string::npos );
  CHECK( run( { "metrics", fx( "helicopter.kb.json" ) } ).code == 2 );
  CHECK( run( { "synth", fx( "subtractor.req.json" ), "--max-gates", "0" } ).code == 2 );
  CHECK( run( { "synth", fx( "parity3.req.json" ), "--topology", fx( "subtractor.topo.json" ) } ).code == 2 );
  CHECK( run( { "metrics", "--format", "yaml", fx( "rope.fs.json" ) } ).code == 2 );
}

TEST_CASE( "help exits cleanly" )
{
  const auto r = run( { "--help" } );
  CHECK( r.code == 0 );
  CHECK( ( r.out + r.err ).find( "metrics" ) != std::string::npos );
}
