#pragma once

// Similarity recomputed term by term from plain label lists.

#include "support.hpp"

#include <algorithm>
#include <iterator>
#include <string>
#include <vector>

namespace designkit::test
{

// multiset Jaccard by sorting both lists and walking them in step
inline rational oracle_jaccard( std::vector<std::string> a, std::vector<std::string> b )
{
  if ( a.empty() && b.empty() )
    return rational( 1 );
  std::sort( a.begin(), a.end() );
  std::sort( b.begin(), b.end() );
  std::vector<std::string> common;
  std::set_intersection( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( common ) );
  const auto inter = static_cast<std::int64_t>( common.size() );
  return rational( inter, static_cast<std::int64_t>( a.size() + b.size() ) - inter );
}

inline rational oracle_similarity( const funcstruct::function_structure& q, const funcstruct::function_structure& c,
                            rational wf, rational wl, rational ws )
{
  std::vector<std::string> fq, fc, lq, lc;
  for ( const auto& v : q.vertices )
    fq.push_back( v.label );
  for ( const auto& v : c.vertices )
    fc.push_back( v.label );
  for ( const auto& f : q.flows )
    lq.push_back( f.label );
  for ( const auto& f : c.flows )
    lc.push_back( f.label );
  auto d = oracle_pi( q ) - oracle_pi( c );
  if ( d < rational( 0 ) )
    d = -d;
  return wf * oracle_jaccard( fq, fc ) + wl * oracle_jaccard( lq, lc ) + ws * ( rational( 1 ) - d );
}

} // namespace designkit::test
