#pragma once

// Exhaustive circuit enumeration used to cross-check the synthesis search.

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace designkit::test
{

inline bool bit_of( std::size_t row, std::size_t i, std::size_t n )
{
  return ( row >> ( n - 1 - i ) ) & 1u;
}

// Fewest gates realizing each truth table, by enumerating every straight-line
// program (any gate, any ordered operands, no canonical pruning) up to
// `limit` gates. Tables missing from the maps are unreachable.
struct brute_force
{
  std::size_t n;
  std::size_t limit;
  std::map<std::uint64_t, std::size_t> single;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> pairs;

  brute_force( std::size_t inputs, std::size_t max_gates ) : n( inputs ), limit( max_gates )
  {
    std::vector<std::uint64_t> signals;
    const std::size_t rows = std::size_t{ 1 } << n;
    for ( std::size_t i = 0; i < n; ++i )
    {
      std::uint64_t t = 0;
      for ( std::size_t r = 0; r < rows; ++r )
        t |= std::uint64_t( bit_of( r, i, n ) ) << r;
      signals.push_back( t );
    }
    const std::uint64_t mask = rows == 64 ? ~0ull : ( 1ull << rows ) - 1;
    std::vector<std::uint64_t> gate_tables;
    std::function<void()> grow = [&] {
      const auto k = gate_tables.size();
      for ( auto t : gate_tables )
        note( single, t, k );
      for ( auto a : gate_tables )
        for ( auto b : gate_tables )
          note( pairs, std::pair{ a, b }, k );
      if ( k == limit )
        return;
      auto push = [&]( std::uint64_t t ) {
        signals.push_back( t );
        gate_tables.push_back( t );
        grow();
        gate_tables.pop_back();
        signals.pop_back();
      };
      const auto count = signals.size();
      for ( std::size_t a = 0; a < count; ++a )
      {
        push( signals[a] );
        push( ~signals[a] & mask );
        for ( std::size_t b = 0; b < count; ++b )
        {
          push( signals[a] & signals[b] );
          push( signals[a] | signals[b] );
          push( signals[a] ^ signals[b] );
        }
      }
    };
    grow();
  }

  template <typename Map, typename Key>
  static void note( Map& m, const Key& key, std::size_t k )
  {
    if ( k == 0 )
      return;
    auto [it, fresh] = m.emplace( key, k );
    if ( !fresh && k < it->second )
      it->second = k;
  }
};

} // namespace designkit::test
