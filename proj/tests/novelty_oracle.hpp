#pragma once

#include <designkit/novelty.hpp>

#include <algorithm>
#include <utility>

namespace designkit::test
{

// Both indices from scratch: classify each assignment, then divide.
inline std::pair<rational, rational> oracle_indices( const novelty::knowledge_base& kb, const novelty::design_instance& d )
{
  std::int64_t unexpected = 0, fresh = 0;
  for ( const auto& [name, v] : d.assignments )
  {
    const auto& vars = kb.variables();
    auto it = std::find_if( vars.begin(), vars.end(), [&]( const auto& var ) { return var.name == name; } );
    if ( it == vars.end() )
      ++fresh;
    else
    {
      bool inside = it->domain.predicate.has_value() ||
                    std::find( it->domain.values.begin(), it->domain.values.end(), v ) != it->domain.values.end();
      if ( !inside && it->domain.range && std::holds_alternative<double>( v ) )
        inside = std::get<double>( v ) >= it->domain.range->lower && std::get<double>( v ) <= it->domain.range->upper;
      unexpected += inside ? 0 : 1;
    }
  }
  const auto n = static_cast<std::int64_t>( d.assignments.size() );
  return { rational( unexpected, n ), rational( fresh, n ) };
}

} // namespace designkit::test
