#include <designkit/synth.hpp>

#include <algorithm>
#include <tuple>

namespace designkit::synth
{

std::size_t arity( gate_type g )
{
  return g == gate_type::identity || g == gate_type::not_gate ? 1 : 2;
}

std::string_view to_string( gate_type g )
{
  switch ( g )
  {
  case gate_type::identity: return "IDENTITY";
  case gate_type::not_gate: return "NOT";
  case gate_type::and_gate: return "AND";
  case gate_type::or_gate: return "OR";
  case gate_type::xor_gate: return "XOR";
  }
  return "?";
}

void check_topology( const topology& t )
{
  if ( t.inputs.size() > max_inputs )
    throw error( "at most " + std::to_string( max_inputs ) + " primary inputs are supported" );
  if ( t.outputs.empty() )
    throw error( "topology has no primary output" );
  for ( std::size_t k = 0; k < t.slots.size(); ++k )
  {
    const auto& s = t.slots[k];
    if ( s.inputs.size() != 1 && s.inputs.size() != 2 )
      throw error( "slot " + std::to_string( k ) + " must read one or two signals" );
    for ( const auto& in : s.inputs )
    {
      if ( in.source == signal::kind::input && in.index >= t.inputs.size() )
        throw error( "slot " + std::to_string( k ) + " reads a nonexistent primary input" );
      if ( in.source == signal::kind::gate && in.index >= k )
        throw error( "slot " + std::to_string( k ) + " reads slot " + std::to_string( in.index ) +
                     ", which is not earlier" );
    }
  }
  std::vector<bool> live( t.slots.size(), false );
  for ( const auto& o : t.outputs )
  {
    if ( o.slot >= t.slots.size() )
      throw error( "output '" + o.name + "' references a nonexistent slot" );
    live[o.slot] = true;
  }
  for ( std::size_t k = t.slots.size(); k-- > 0; )
    if ( live[k] )
      for ( const auto& in : t.slots[k].inputs )
        if ( in.source == signal::kind::gate )
          live[in.index] = true;
  for ( std::size_t k = 0; k < live.size(); ++k )
    if ( !live[k] )
      throw error( "slot " + std::to_string( k ) + " does not reach any primary output" );
}

requirement requirement::from_rows( std::vector<std::string> inputs, std::vector<std::string> outputs,
                                    const std::vector<std::vector<bool>>& row_outputs )
{
  requirement r;
  r.inputs = std::move( inputs );
  r.outputs = std::move( outputs );
  if ( r.inputs.size() > max_inputs )
    throw error( "at most " + std::to_string( max_inputs ) + " primary inputs are supported" );
  if ( row_outputs.size() != r.rows() )
    throw error( "truth table needs " + std::to_string( r.rows() ) + " rows" );
  r.tables.assign( r.outputs.size(), 0 );
  for ( std::size_t row = 0; row < row_outputs.size(); ++row )
  {
    if ( row_outputs[row].size() != r.outputs.size() )
      throw error( "row " + std::to_string( row ) + " has the wrong output width" );
    for ( std::size_t o = 0; o < r.outputs.size(); ++o )
      if ( row_outputs[row][o] )
        r.tables[o] |= std::uint64_t{ 1 } << row;
  }
  return r;
}

namespace
{

std::uint64_t row_mask( std::size_t num_inputs )
{
  const auto rows = std::size_t{ 1 } << num_inputs;
  return rows >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << rows ) - 1;
}

// Truth table of primary input i over all rows (first input is the MSB).
std::uint64_t input_table( std::size_t i, std::size_t num_inputs )
{
  std::uint64_t table = 0;
  for ( std::size_t row = 0; row < ( std::size_t{ 1 } << num_inputs ); ++row )
    if ( ( row >> ( num_inputs - 1 - i ) ) & 1u )
      table |= std::uint64_t{ 1 } << row;
  return table;
}

std::uint64_t apply_gate( gate_type g, std::uint64_t a, std::uint64_t b, std::uint64_t mask )
{
  switch ( g )
  {
  case gate_type::identity: return a;
  case gate_type::not_gate: return ~a & mask;
  case gate_type::and_gate: return a & b;
  case gate_type::or_gate: return a | b;
  case gate_type::xor_gate: return a ^ b;
  }
  return 0;
}

} // namespace

void check_requirement( const requirement& r )
{
  if ( r.inputs.size() > max_inputs )
    throw error( "at most " + std::to_string( max_inputs ) + " primary inputs are supported" );
  if ( r.outputs.empty() )
    throw error( "requirement has no outputs" );
  if ( r.tables.size() != r.outputs.size() )
    throw error( "requirement needs one truth table per output" );
  for ( auto t : r.tables )
    if ( t & ~row_mask( r.inputs.size() ) )
      throw error( "truth table has bits beyond the last row" );
}

void check_circuit( const circuit& c )
{
  check_topology( c.topology );
  if ( c.gates.size() != c.topology.slots.size() )
    throw error( "circuit needs one gate per slot" );
  for ( std::size_t k = 0; k < c.gates.size(); ++k )
    if ( arity( c.gates[k] ) != c.topology.slots[k].inputs.size() )
      throw error( "slot " + std::to_string( k ) + ": gate " + std::string( to_string( c.gates[k] ) ) +
                   " does not match the slot arity" );
}

std::vector<bool> evaluate( const circuit& c, const std::vector<bool>& inputs )
{
  if ( inputs.size() != c.topology.inputs.size() )
    throw error( "expected " + std::to_string( c.topology.inputs.size() ) + " input bits, got " +
                 std::to_string( inputs.size() ) );
  if ( c.gates.size() != c.topology.slots.size() )
    throw error( "circuit needs one gate per slot" );

  std::vector<bool> value( c.gates.size() );
  auto read = [&]( const signal& s ) { return s.source == signal::kind::input ? inputs[s.index] : value[s.index]; };
  for ( std::size_t k = 0; k < c.gates.size(); ++k )
  {
    const auto& in = c.topology.slots[k].inputs;
    const bool a = read( in[0] );
    const bool b = in.size() > 1 ? read( in[1] ) : false;
    switch ( c.gates[k] )
    {
    case gate_type::identity: value[k] = a; break;
    case gate_type::not_gate: value[k] = !a; break;
    case gate_type::and_gate: value[k] = a && b; break;
    case gate_type::or_gate: value[k] = a || b; break;
    case gate_type::xor_gate: value[k] = a != b; break;
    }
  }
  std::vector<bool> out;
  out.reserve( c.topology.outputs.size() );
  for ( const auto& o : c.topology.outputs )
    out.push_back( value.at( o.slot ) );
  return out;
}

bool satisfies( const circuit& c, const requirement& r )
{
  const auto n = r.inputs.size();
  if ( c.topology.inputs.size() != n || c.topology.outputs.size() != r.outputs.size() )
    return false;
  for ( std::size_t row = 0; row < r.rows(); ++row )
  {
    std::vector<bool> bits( n );
    for ( std::size_t i = 0; i < n; ++i )
      bits[i] = ( row >> ( n - 1 - i ) ) & 1u;
    const auto got = evaluate( c, bits );
    for ( std::size_t o = 0; o < got.size(); ++o )
      if ( got[o] != r.expected( row, o ) )
        return false;
  }
  return true;
}

namespace
{

// Depth-first search over gate types, slot by slot, on 64-bit truth tables.
// An output is checked as soon as the slot driving it is assigned.
class assignment_search
{
public:
  assignment_search( const topology& t, const requirement& r ) : topology_( t ), requirement_( r )
  {
    const auto n = t.inputs.size();
    mask_ = row_mask( n );
    for ( std::size_t i = 0; i < n; ++i )
      inputs_.push_back( input_table( i, n ) );
    checks_.resize( t.slots.size() );
    for ( std::size_t o = 0; o < t.outputs.size(); ++o )
      checks_[t.outputs[o].slot].push_back( o );
    tables_.resize( t.slots.size() );
    gates_.resize( t.slots.size() );
  }

  std::optional<std::vector<gate_type>> run()
  {
    if ( assign( 0 ) )
      return gates_;
    return std::nullopt;
  }

private:
  std::uint64_t read( const signal& s ) const
  {
    return s.source == signal::kind::input ? inputs_[s.index] : tables_[s.index];
  }

  bool assign( std::size_t k )
  {
    if ( k == topology_.slots.size() )
      return true;
    const auto& in = topology_.slots[k].inputs;
    const auto a = read( in[0] );
    const auto b = in.size() > 1 ? read( in[1] ) : 0;
    for ( auto g : all_gate_types )
    {
      if ( arity( g ) != in.size() )
        continue;
      const auto table = apply_gate( g, a, b, mask_ );
      bool consistent = true;
      for ( auto o : checks_[k] )
        consistent = consistent && table == requirement_.tables[o];
      if ( !consistent )
        continue;
      tables_[k] = table;
      gates_[k] = g;
      if ( assign( k + 1 ) )
        return true;
    }
    return false;
  }

  const topology& topology_;
  const requirement& requirement_;
  std::uint64_t mask_ = 0;
  std::vector<std::uint64_t> inputs_;
  std::vector<std::vector<std::size_t>> checks_;
  std::vector<std::uint64_t> tables_;
  std::vector<gate_type> gates_;
};

std::optional<circuit> assign_gates( const topology& t, const requirement& r )
{
  auto gates = assignment_search( t, r ).run();
  if ( !gates )
    return std::nullopt;
  circuit c{ t, std::move( *gates ) };
  if ( !satisfies( c, r ) )
    throw error( "internal error: synthesized circuit fails verification" );
  return c;
}

// Canonical topologies: slot keys (depth, arity, refs) are non-decreasing,
// binary refs are unordered pairs (a <= b), and every slot that feeds no
// later slot must drive a primary output. Refs number primary inputs
// first, then slots.
class topology_enumerator
{
public:
  topology_enumerator( const requirement& r, std::size_t gates, search_statistics* stats )
      : requirement_( r ), inputs_( r.inputs.size() ), gates_( gates ), stats_( stats )
  {
    topology_.inputs = r.inputs;
    topology_.slots.reserve( gates );
    depth_.reserve( gates );
    uses_.reserve( gates );
  }

  std::optional<circuit> run()
  {
    place( 0 );
    return std::move( found_ );
  }

private:
  using key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

  signal to_signal( std::size_t ref ) const
  {
    return ref < inputs_ ? signal::primary( ref ) : signal::gate( ref - inputs_ );
  }

  std::size_t depth_of( std::size_t ref ) const { return ref < inputs_ ? 0 : depth_[ref - inputs_]; }

  std::size_t unused() const
  {
    return static_cast<std::size_t>( std::count( uses_.begin(), uses_.end(), 0u ) );
  }

  bool try_slot( std::size_t k, std::vector<std::size_t> refs )
  {
    const auto d = 1 + std::max( depth_of( refs.front() ), depth_of( refs.back() ) );
    const key current{ d, refs.size(), refs.front(), refs.back() };
    if ( k > 0 && current < keys_.back() )
      return false;

    slot s;
    for ( auto ref : refs )
      s.inputs.push_back( to_signal( ref ) );
    topology_.slots.push_back( std::move( s ) );
    keys_.push_back( current );
    depth_.push_back( d );
    for ( auto ref : refs )
      if ( ref >= inputs_ )
        ++uses_[ref - inputs_];
    uses_.push_back( 0 );

    // every remaining slot lowers the number of unread slots by at most one
    const auto remaining = gates_ - k - 1;
    bool done = false;
    if ( unused() <= requirement_.outputs.size() + remaining )
      done = place( k + 1 );

    uses_.pop_back();
    for ( auto ref : refs )
      if ( ref >= inputs_ )
        --uses_[ref - inputs_];
    depth_.pop_back();
    keys_.pop_back();
    topology_.slots.pop_back();
    return done;
  }

  bool place( std::size_t k )
  {
    if ( k == gates_ )
      return bind_outputs( 0 );
    const auto signals = inputs_ + k;
    for ( std::size_t a = 0; a < signals; ++a )
      if ( try_slot( k, { a } ) )
        return true;
    for ( std::size_t a = 0; a < signals; ++a )
      for ( std::size_t b = a; b < signals; ++b )
        if ( try_slot( k, { a, b } ) )
          return true;
    return false;
  }

  bool bind_outputs( std::size_t o )
  {
    if ( o == requirement_.outputs.size() )
    {
      for ( std::size_t k = 0; k < gates_; ++k )
        if ( uses_[k] == 0 && std::none_of( topology_.outputs.begin(), topology_.outputs.end(),
                                            [k]( const auto& out ) { return out.slot == k; } ) )
          return false;
      if ( stats_ )
        ++stats_->topologies;
      found_ = assign_gates( topology_, requirement_ );
      return found_.has_value();
    }
    for ( std::size_t k = 0; k < gates_; ++k )
    {
      topology_.outputs.push_back( { requirement_.outputs[o], k } );
      const bool done = bind_outputs( o + 1 );
      topology_.outputs.pop_back();
      if ( done )
        return true;
    }
    return false;
  }

  const requirement& requirement_;
  std::size_t inputs_;
  std::size_t gates_;
  search_statistics* stats_;
  topology topology_;
  std::vector<key> keys_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> uses_;
  std::optional<circuit> found_;
};

} // namespace

std::optional<circuit> synthesize_assignment( const topology& t, const requirement& r )
{
  check_topology( t );
  check_requirement( r );
  if ( t.inputs.size() != r.inputs.size() )
    throw error( "topology has " + std::to_string( t.inputs.size() ) + " inputs, requirement has " +
                 std::to_string( r.inputs.size() ) );
  if ( t.outputs.size() != r.outputs.size() )
    throw error( "topology has " + std::to_string( t.outputs.size() ) + " outputs, requirement has " +
                 std::to_string( r.outputs.size() ) );
  return assign_gates( t, r );
}

std::optional<circuit> synthesize_topology( const requirement& r, std::size_t max_gates, search_statistics* stats )
{
  check_requirement( r );
  if ( max_gates == 0 )
    throw error( "max_gates must be at least 1" );
  for ( std::size_t g = 1; g <= max_gates; ++g )
  {
    if ( stats )
      stats->gate_count = g;
    if ( auto c = topology_enumerator( r, g, stats ).run() )
      return c;
  }
  return std::nullopt;
}

funcstruct::function_structure to_function_structure( const circuit& c )
{
  check_circuit( c );
  funcstruct::function_structure fs;
  auto gate_id = []( std::size_t k ) { return "g" + std::to_string( k ); };
  for ( std::size_t k = 0; k < c.gates.size(); ++k )
    fs.vertices.push_back( { gate_id( k ), std::string( to_string( c.gates[k] ) ) } );
  for ( const auto& name : c.topology.inputs )
    fs.terminals.push_back( { "in:" + name, funcstruct::terminal_kind::input, name } );
  for ( const auto& o : c.topology.outputs )
    fs.terminals.push_back( { "out:" + o.name, funcstruct::terminal_kind::output, o.name } );

  for ( std::size_t k = 0; k < c.gates.size(); ++k )
    for ( const auto& in : c.topology.slots[k].inputs )
    {
      if ( in.source == signal::kind::input )
      {
        const auto& name = c.topology.inputs[in.index];
        fs.flows.push_back( { "in:" + name, gate_id( k ), name } );
      }
      else
        fs.flows.push_back( { gate_id( in.index ), gate_id( k ), gate_id( in.index ) } );
    }
  for ( const auto& o : c.topology.outputs )
    fs.flows.push_back( { gate_id( o.slot ), "out:" + o.name, o.name } );
  return fs;
}

} // namespace designkit::synth
