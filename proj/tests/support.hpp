#pragma once

// Helpers shared by the unit tests and the acceptance driver. The oracles
// here are deliberately naive and do not call into the library.

#include <designkit/funcstruct.hpp>
#include <designkit/rational.hpp>

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace designkit::test
{

inline std::string fixture_path( const std::string& name )
{
  return std::string( DESIGNKIT_FIXTURE_DIR ) + "/" + name;
}

inline std::string read_fixture( const std::string& name )
{
  std::ifstream in( fixture_path( name ), std::ios::binary );
  if ( !in )
    throw std::runtime_error( "missing fixture " + name );
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline funcstruct::function_structure fixture_structure( const std::string& name )
{
  return std::get<funcstruct::function_structure>( funcstruct::parse_structure( read_fixture( name ) ) );
}

// PI by counting flow endpoints into a map, straight from the definition.
inline rational oracle_pi( const funcstruct::function_structure& fs )
{
  std::map<std::string, int> degree;
  for ( const auto& v : fs.vertices )
    degree[v.id] = 0;
  for ( const auto& f : fs.flows )
  {
    if ( auto it = degree.find( f.source ); it != degree.end() )
      ++it->second;
    if ( auto it = degree.find( f.target ); it != degree.end() )
      ++it->second;
  }
  std::int64_t high = 0;
  for ( const auto& [id, d] : degree )
    high += d > 2 ? 1 : 0;
  return rational( high, static_cast<std::int64_t>( degree.size() ) );
}

// Random valid structure: every vertex gets a predecessor (an input terminal
// or an earlier vertex) and a successor (a later vertex or an output
// terminal), plus extra forward flows, so it is acyclic and connected.
inline funcstruct::function_structure random_structure( std::mt19937& rng, std::size_t max_vertices = 12,
                                                        std::size_t label_pool = 6 )
{
  using namespace funcstruct;
  std::uniform_int_distribution<std::size_t> count( 1, max_vertices );
  const auto n = count( rng );
  auto pick = [&rng]( std::size_t lo, std::size_t hi ) {
    return std::uniform_int_distribution<std::size_t>( lo, hi )( rng );
  };
  auto label = [&]( const char* prefix ) { return std::string( prefix ) + std::to_string( pick( 0, label_pool - 1 ) ); };

  function_structure fs;
  const std::size_t inputs = pick( 1, 2 ), outputs = pick( 1, 2 );
  for ( std::size_t i = 0; i < inputs; ++i )
    fs.terminals.push_back( { "in" + std::to_string( i ), terminal_kind::input, label( "flow" ) } );
  for ( std::size_t i = 0; i < outputs; ++i )
    fs.terminals.push_back( { "out" + std::to_string( i ), terminal_kind::output, label( "flow" ) } );
  auto vid = []( std::size_t i ) { return "v" + std::to_string( i ); };
  for ( std::size_t i = 0; i < n; ++i )
    fs.vertices.push_back( { vid( i ), label( "function" ) } );

  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( i == 0 || pick( 0, 3 ) == 0 )
      fs.flows.push_back( { "in" + std::to_string( pick( 0, inputs - 1 ) ), vid( i ), label( "flow" ) } );
    else
      fs.flows.push_back( { vid( pick( 0, i - 1 ) ), vid( i ), label( "flow" ) } );
    if ( i + 1 == n || pick( 0, 3 ) == 0 )
      fs.flows.push_back( { vid( i ), "out" + std::to_string( pick( 0, outputs - 1 ) ), label( "flow" ) } );
    else
      fs.flows.push_back( { vid( i ), vid( pick( i + 1, n - 1 ) ), label( "flow" ) } );
  }
  const auto extra = pick( 0, n );
  for ( std::size_t e = 0; e < extra && n > 1; ++e )
  {
    const auto a = pick( 0, n - 2 );
    fs.flows.push_back( { vid( a ), vid( pick( a + 1, n - 1 ) ), label( "flow" ) } );
  }
  return fs;
}

} // namespace designkit::test
