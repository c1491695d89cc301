#include <designkit/funcstruct.hpp>

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace designkit::funcstruct
{

std::string_view to_string( violation_kind kind )
{
  switch ( kind )
  {
  case violation_kind::empty_structure: return "empty_structure";
  case violation_kind::empty_id: return "empty_id";
  case violation_kind::duplicate_id: return "duplicate_id";
  case violation_kind::empty_label: return "empty_label";
  case violation_kind::unknown_endpoint: return "unknown_endpoint";
  case violation_kind::terminal_to_terminal: return "terminal_to_terminal";
  case violation_kind::input_terminal_has_incoming: return "input_terminal_has_incoming";
  case violation_kind::output_terminal_has_outgoing: return "output_terminal_has_outgoing";
  case violation_kind::cycle: return "cycle";
  case violation_kind::not_connected: return "not_connected";
  case violation_kind::black_box_without_input: return "black_box_without_input";
  case violation_kind::black_box_without_output: return "black_box_without_output";
  }
  return "unknown";
}

bool validation_report::has( violation_kind kind ) const
{
  return std::any_of( violations.begin(), violations.end(),
                      [kind]( const auto& v ) { return v.kind == kind; } );
}

namespace
{

std::string summarize( const validation_report& report )
{
  std::string text = "invalid structure";
  for ( const auto& v : report.violations )
  {
    text += "\n  ";
    text += to_string( v.kind );
    text += ": ";
    text += v.message;
  }
  return text;
}

enum class node_role
{
  vertex,
  input,
  output
};

} // namespace

invalid_structure::invalid_structure( validation_report report )
    : error( summarize( report ) ), report_( std::move( report ) )
{
}

validation_report validate( const function_structure& fs )
{
  validation_report report;
  auto add = [&report]( violation_kind kind, std::string subject, std::string message ) {
    report.violations.push_back( { kind, std::move( subject ), std::move( message ) } );
  };

  if ( fs.vertices.empty() )
    add( violation_kind::empty_structure, "", "structure has no function vertices" );

  std::unordered_map<std::string, node_role> roles;
  std::unordered_map<std::string, std::size_t> vertex_index;
  auto register_id = [&]( const std::string& id, node_role role ) {
    if ( id.empty() )
    {
      add( violation_kind::empty_id, "", "empty id" );
      return;
    }
    if ( !roles.emplace( id, role ).second )
      add( violation_kind::duplicate_id, id, "id '" + id + "' is declared more than once" );
  };

  for ( std::size_t i = 0; i < fs.vertices.size(); ++i )
  {
    register_id( fs.vertices[i].id, node_role::vertex );
    vertex_index.emplace( fs.vertices[i].id, i );
  }
  for ( const auto& t : fs.terminals )
  {
    register_id( t.id, t.kind == terminal_kind::input ? node_role::input : node_role::output );
    if ( t.label.empty() )
      add( violation_kind::empty_label, t.id, "terminal '" + t.id + "' has an empty flow label" );
  }

  // adjacency over vertex indices; terminals are handled as sources/sinks
  const auto n = fs.vertices.size();
  std::vector<std::vector<std::size_t>> successors( n ), predecessors( n );
  std::vector<bool> fed_by_input( n, false ), feeds_output( n, false );

  for ( std::size_t i = 0; i < fs.flows.size(); ++i )
  {
    const auto& f = fs.flows[i];
    const auto flow_name = "flow #" + std::to_string( i ) + " (" + f.source + " -> " + f.target + ")";
    if ( f.label.empty() )
      add( violation_kind::empty_label, f.source, flow_name + " has an empty label" );

    auto src = roles.find( f.source );
    auto dst = roles.find( f.target );
    if ( src == roles.end() || dst == roles.end() )
    {
      const auto& missing = src == roles.end() ? f.source : f.target;
      add( violation_kind::unknown_endpoint, missing, flow_name + " references unknown id '" + missing + "'" );
      continue;
    }
    const auto src_role = src->second;
    const auto dst_role = dst->second;
    if ( src_role != node_role::vertex && dst_role != node_role::vertex )
    {
      add( violation_kind::terminal_to_terminal, f.source, flow_name + " connects two terminals" );
      continue;
    }
    if ( dst_role == node_role::input )
      add( violation_kind::input_terminal_has_incoming, f.target,
           flow_name + " enters input terminal '" + f.target + "'" );
    if ( src_role == node_role::output )
      add( violation_kind::output_terminal_has_outgoing, f.source,
           flow_name + " leaves output terminal '" + f.source + "'" );

    if ( src_role == node_role::vertex && dst_role == node_role::vertex )
    {
      auto s = vertex_index.at( f.source );
      auto t = vertex_index.at( f.target );
      successors[s].push_back( t );
      predecessors[t].push_back( s );
    }
    else if ( src_role == node_role::input && dst_role == node_role::vertex )
      fed_by_input[vertex_index.at( f.target )] = true;
    else if ( src_role == node_role::vertex && dst_role == node_role::output )
      feeds_output[vertex_index.at( f.source )] = true;
  }

  // Kahn's algorithm on the vertex subgraph
  std::vector<std::size_t> in_degree( n );
  std::deque<std::size_t> ready;
  for ( std::size_t v = 0; v < n; ++v )
  {
    in_degree[v] = predecessors[v].size();
    if ( in_degree[v] == 0 )
      ready.push_back( v );
  }
  std::size_t removed = 0;
  while ( !ready.empty() )
  {
    auto v = ready.front();
    ready.pop_front();
    ++removed;
    for ( auto w : successors[v] )
      if ( --in_degree[w] == 0 )
        ready.push_back( w );
  }
  if ( removed != n )
  {
    std::string members;
    std::string first;
    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( in_degree[v] == 0 )
        continue;
      if ( first.empty() )
        first = fs.vertices[v].id;
      members += members.empty() ? "" : ", ";
      members += fs.vertices[v].id;
    }
    add( violation_kind::cycle, first, "flows form a cycle through {" + members + "}" );
  }

  auto closure = []( std::vector<bool> seed, const std::vector<std::vector<std::size_t>>& next ) {
    std::deque<std::size_t> queue;
    for ( std::size_t v = 0; v < seed.size(); ++v )
      if ( seed[v] )
        queue.push_back( v );
    while ( !queue.empty() )
    {
      auto v = queue.front();
      queue.pop_front();
      for ( auto w : next[v] )
        if ( !seed[w] )
        {
          seed[w] = true;
          queue.push_back( w );
        }
    }
    return seed;
  };
  const auto from_input = closure( fed_by_input, successors );
  const auto to_output = closure( feeds_output, predecessors );
  for ( std::size_t v = 0; v < n; ++v )
  {
    if ( from_input[v] && to_output[v] )
      continue;
    const auto& id = fs.vertices[v].id;
    std::string why = !from_input[v] && !to_output[v] ? "is not reachable from an input terminal and reaches no output terminal"
                      : !from_input[v]                 ? "is not reachable from any input terminal"
                                                       : "has no path to any output terminal";
    add( violation_kind::not_connected, id, "vertex '" + id + "' " + why );
  }

  return report;
}

validation_report validate( const black_box& bb )
{
  validation_report report;
  if ( bb.inputs.empty() )
    report.violations.push_back( { violation_kind::black_box_without_input, bb.label, "black box has no input flow" } );
  if ( bb.outputs.empty() )
    report.violations.push_back( { violation_kind::black_box_without_output, bb.label, "black box has no output flow" } );
  auto check_labels = [&]( const std::vector<std::string>& labels, const char* side ) {
    for ( const auto& l : labels )
      if ( l.empty() )
        report.violations.push_back( { violation_kind::empty_label, bb.label, std::string( "empty " ) + side + " flow label" } );
  };
  check_labels( bb.inputs, "input" );
  check_labels( bb.outputs, "output" );
  return report;
}

validation_report validate( const design_problem& p )
{
  return std::visit( []( const auto& alt ) { return validate( alt ); }, p );
}

std::size_t degree( const function_structure& fs, std::string_view id )
{
  auto it = std::find_if( fs.vertices.begin(), fs.vertices.end(),
                          [id]( const auto& v ) { return v.id == id; } );
  if ( it == fs.vertices.end() )
    throw error( "unknown vertex id '" + std::string( id ) + "'" );

  std::size_t d = 0;
  for ( const auto& f : fs.flows )
  {
    d += f.source == id;
    d += f.target == id;
  }
  return d;
}

std::vector<std::size_t> degrees( const function_structure& fs )
{
  std::unordered_map<std::string_view, std::size_t> count;
  for ( const auto& f : fs.flows )
  {
    ++count[f.source];
    ++count[f.target];
  }
  std::vector<std::size_t> result;
  result.reserve( fs.vertices.size() );
  for ( const auto& v : fs.vertices )
  {
    auto it = count.find( v.id );
    result.push_back( it == count.end() ? 0 : it->second );
  }
  return result;
}

interdependency_counts interdependency_terms( const design_problem& p )
{
  if ( auto report = validate( p ); !report.ok() )
    throw invalid_structure( std::move( report ) );

  if ( const auto* bb = std::get_if<black_box>( &p ) )
    return { bb->inputs.size() + bb->outputs.size() > 2 ? 1u : 0u, 1 };

  const auto& fs = std::get<function_structure>( p );
  const auto d = degrees( fs );
  return { static_cast<std::size_t>( std::count_if( d.begin(), d.end(), []( auto x ) { return x > 2; } ) ),
           fs.vertices.size() };
}

rational interdependency_index( const design_problem& p )
{
  auto [high, total] = interdependency_terms( p );
  return rational( static_cast<std::int64_t>( high ), static_cast<std::int64_t>( total ) );
}

} // namespace designkit::funcstruct
