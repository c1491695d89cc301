#include <designkit/casebase.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

namespace designkit::cbr
{

case_base::case_base( std::vector<design_case> cases ) : cases_( std::move( cases ) )
{
  std::set<std::string_view> ids;
  for ( const auto& c : cases_ )
  {
    if ( c.id.empty() )
      throw error( "case with empty id" );
    if ( !ids.insert( c.id ).second )
      throw error( "duplicate case id '" + c.id + "'" );
    if ( auto report = funcstruct::validate( c.problem ); !report.ok() )
      throw error( "case '" + c.id + "' has an invalid problem: " + report.violations.front().message );
  }
}

const design_case* case_base::find( std::string_view id ) const
{
  auto it = std::find_if( cases_.begin(), cases_.end(), [id]( const auto& c ) { return c.id == id; } );
  return it == cases_.end() ? nullptr : &*it;
}

void similarity_spec::check() const
{
  if ( function_weight < 0 || flow_weight < 0 || structure_weight < 0 )
    throw error( "similarity weights must be non-negative" );
  if ( function_weight + flow_weight + structure_weight != rational( 1 ) )
    throw error( "similarity weights must sum to 1, got " +
                 to_string( function_weight + flow_weight + structure_weight ) );
}

rational multiset_jaccard( std::vector<std::string> a, std::vector<std::string> b )
{
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
  for ( auto& s : a )
    ++counts[std::move( s )].first;
  for ( auto& s : b )
    ++counts[std::move( s )].second;
  std::int64_t inter = 0, uni = 0;
  for ( const auto& [_, c] : counts )
  {
    inter += std::min( c.first, c.second );
    uni += std::max( c.first, c.second );
  }
  return uni == 0 ? rational( 1 ) : rational( inter, uni );
}

namespace
{

std::vector<std::string> function_labels( const funcstruct::function_structure& fs )
{
  std::vector<std::string> labels;
  for ( const auto& v : fs.vertices )
    labels.push_back( v.label );
  return labels;
}

std::vector<std::string> flow_labels( const funcstruct::function_structure& fs )
{
  std::vector<std::string> labels;
  for ( const auto& f : fs.flows )
    labels.push_back( f.label );
  return labels;
}

} // namespace

rational similarity( const similarity_spec& spec, const funcstruct::function_structure& query,
                     const funcstruct::function_structure& problem )
{
  spec.check();
  const auto pi_query = funcstruct::interdependency_index( query );
  const auto pi_case = funcstruct::interdependency_index( problem );
  const auto delta = pi_query > pi_case ? pi_query - pi_case : pi_case - pi_query;
  return spec.function_weight * multiset_jaccard( function_labels( query ), function_labels( problem ) ) +
         spec.flow_weight * multiset_jaccard( flow_labels( query ), flow_labels( problem ) ) +
         spec.structure_weight * ( rational( 1 ) - delta );
}

retrieval_result retrieve( const case_base& base, const similarity_spec& spec,
                           const funcstruct::function_structure& query, std::size_t k )
{
  if ( base.empty() )
    throw error( "cannot retrieve from an empty case base" );
  if ( k == 0 )
    throw error( "k must be at least 1" );

  retrieval_result ranked;
  ranked.reserve( base.size() );
  for ( const auto& c : base.cases() )
    ranked.push_back( { c.id, similarity( spec, query, c.problem ) } );
  std::sort( ranked.begin(), ranked.end(), []( const ranked_case& a, const ranked_case& b ) {
    if ( a.score != b.score )
      return a.score > b.score;
    return a.id < b.id;
  } );
  if ( ranked.size() > k )
    ranked.resize( k );
  return ranked;
}

namespace
{

std::set<std::string> tokens( std::string_view text )
{
  std::set<std::string> out;
  std::string word;
  for ( char ch : text )
  {
    auto c = static_cast<unsigned char>( ch );
    if ( std::isalnum( c ) )
      word.push_back( static_cast<char>( std::tolower( c ) ) );
    else if ( !word.empty() )
      out.insert( std::exchange( word, {} ) );
  }
  if ( !word.empty() )
    out.insert( word );
  return out;
}

} // namespace

rational label_similarity( std::string_view a, std::string_view b )
{
  if ( a == b )
    return 1;
  const auto ta = tokens( a );
  const auto tb = tokens( b );
  if ( ta.empty() && tb.empty() )
    return 1;
  std::int64_t common = 0;
  for ( const auto& t : ta )
    common += tb.count( t );
  const auto total = static_cast<std::int64_t>( ta.size() + tb.size() ) - common;
  return rational( common, total );
}

draft_solution reuse( const design_case& c, const funcstruct::function_structure& query )
{
  const auto& case_vertices = c.problem.vertices;
  const auto& query_vertices = query.vertices;

  std::vector<std::tuple<rational, std::size_t, std::size_t>> pairs;
  for ( std::size_t i = 0; i < case_vertices.size(); ++i )
    for ( std::size_t j = 0; j < query_vertices.size(); ++j )
      if ( auto s = label_similarity( case_vertices[i].label, query_vertices[j].label ); s > 0 )
        pairs.emplace_back( s, i, j );
  std::sort( pairs.begin(), pairs.end(), []( const auto& x, const auto& y ) {
    if ( std::get<0>( x ) != std::get<0>( y ) )
      return std::get<0>( x ) > std::get<0>( y );
    return std::tie( std::get<1>( x ), std::get<2>( x ) ) < std::tie( std::get<1>( y ), std::get<2>( y ) );
  } );

  std::vector<std::optional<std::size_t>> case_to_query( case_vertices.size() );
  std::vector<bool> query_taken( query_vertices.size(), false );
  for ( const auto& [_, i, j] : pairs )
  {
    if ( case_to_query[i] || query_taken[j] )
      continue;
    case_to_query[i] = j;
    query_taken[j] = true;
  }

  draft_solution draft;
  draft.case_id = c.id;
  draft.description = c.solution.description;
  for ( const auto& part : c.solution.components )
  {
    component_mapping mapped{ part, std::nullopt };
    for ( std::size_t i = 0; i < case_vertices.size(); ++i )
      if ( case_vertices[i].label == part.realizes && case_to_query[i] )
      {
        mapped.query_vertex = query_vertices[*case_to_query[i]].id;
        break;
      }
    draft.components.push_back( std::move( mapped ) );
  }
  for ( std::size_t j = 0; j < query_vertices.size(); ++j )
    if ( !query_taken[j] )
      draft.gaps.push_back( query_vertices[j].id );
  return draft;
}

bool requirement::holds( const std::vector<component_mapping>& components ) const
{
  auto present = [&] {
    return std::any_of( components.begin(), components.end(),
                        [&]( const auto& m ) { return m.part.name == component; } );
  };
  switch ( test )
  {
  case kind::has_component: return present();
  case kind::lacks_component: return !present();
  case kind::min_components: return components.size() >= count;
  case kind::max_components: return components.size() <= count;
  }
  return false;
}

revised_solution revise( const draft_solution& draft, const std::vector<requirement>& requirements )
{
  revised_solution revised{ draft, {}, {} };
  for ( const auto& req : requirements )
  {
    const bool ok = req.holds( draft.components );
    revised.checks.push_back( { req.name, ok } );
    if ( !ok )
      revised.open_tasks.push_back( req.name );
  }
  return revised;
}

case_base retain( const case_base& base, design_case c )
{
  if ( base.find( c.id ) )
    throw error( "case id '" + c.id + "' is already in the base" );
  auto cases = base.cases();
  cases.push_back( std::move( c ) );
  return case_base( std::move( cases ) );
}

} // namespace designkit::cbr
