#include <designkit/casebase.hpp>
#include <designkit/funcstruct.hpp>
#include <designkit/grammar.hpp>
#include <designkit/synth.hpp>

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

using namespace designkit;

namespace
{

std::string fixture( const std::string& name )
{
  std::ifstream in( std::string( DESIGNKIT_FIXTURE_DIR ) + "/" + name, std::ios::binary );
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

funcstruct::function_structure structure( const std::string& name )
{
  return std::get<funcstruct::function_structure>( funcstruct::parse_structure( fixture( name ) ) );
}

// Layered structure with `n` vertices and two flows between neighbouring layers.
funcstruct::function_structure layered( std::size_t n )
{
  funcstruct::function_structure fs;
  fs.terminals = { { "in", funcstruct::terminal_kind::input, "x" }, { "out", funcstruct::terminal_kind::output, "x" } };
  for ( std::size_t i = 0; i < n; ++i )
    fs.vertices.push_back( { "v" + std::to_string( i ), "f" + std::to_string( i % 7 ) } );
  fs.flows.push_back( { "in", "v0", "x" } );
  for ( std::size_t i = 1; i < n; ++i )
  {
    fs.flows.push_back( { "v" + std::to_string( i - 1 ), "v" + std::to_string( i ), "x" } );
    if ( i >= 2 && i % 3 == 0 )
      fs.flows.push_back( { "v" + std::to_string( i - 2 ), "v" + std::to_string( i ), "y" } );
  }
  fs.flows.push_back( { "v" + std::to_string( n - 1 ), "out", "x" } );
  return fs;
}

} // namespace

static void interdependency_index_layered( benchmark::State& state )
{
  const auto fs = layered( static_cast<std::size_t>( state.range( 0 ) ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( funcstruct::interdependency_index( fs ) );
  state.SetComplexityN( state.range( 0 ) );
}
BENCHMARK( interdependency_index_layered )->RangeMultiplier( 4 )->Range( 16, 4096 )->Complexity();

static void similarity_coil_winder( benchmark::State& state )
{
  const auto base = cbr::parse_case_base( fixture( "coil_winder.cases.json" ) );
  const auto query = structure( "coil_winder.fs.json" );
  for ( auto _ : state )
    benchmark::DoNotOptimize( cbr::retrieve( base, {}, query, 3 ) );
}
BENCHMARK( similarity_coil_winder );

static void grammar_generate_shaft( benchmark::State& state )
{
  const auto g = grammar::parse_grammar( fixture( "shaft.grammar.json" ) );
  const auto depth = static_cast<std::size_t>( state.range( 0 ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( grammar::generate( g, { depth, 100000 } ) );
}
BENCHMARK( grammar_generate_shaft )->DenseRange( 1, 3 )->Unit( benchmark::kMillisecond );

static void canonical_form_gearbox( benchmark::State& state )
{
  const auto g = grammar::parse_grammar( fixture( "gearbox.grammar.json" ) );
  const auto designs = grammar::generate( g, { 3, 100000 } );
  for ( auto _ : state )
    for ( const auto& gd : designs )
      benchmark::DoNotOptimize( grammar::canonical_form( gd.result ) );
}
BENCHMARK( canonical_form_gearbox );

static void synth_assignment_subtractor( benchmark::State& state )
{
  const auto r = synth::parse_requirement( fixture( "subtractor.req.json" ) );
  const auto t = synth::parse_topology( fixture( "subtractor.topo.json" ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( synth::synthesize_assignment( t, r ) );
}
BENCHMARK( synth_assignment_subtractor );

static void synth_topology_subtractor( benchmark::State& state )
{
  const auto r = synth::parse_requirement( fixture( "subtractor.req.json" ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( synth::synthesize_topology( r, 7 ) );
}
BENCHMARK( synth_topology_subtractor )->Unit( benchmark::kMillisecond )->Iterations( 3 );
BENCHMARK_MAIN();
