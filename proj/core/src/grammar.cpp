#include <designkit/grammar.hpp>

#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace designkit::grammar
{

std::string to_string( const attribute_value& v )
{
  struct
  {
    std::string operator()( bool b ) const { return b ? "true" : "false"; }
    std::string operator()( std::int64_t i ) const { return std::to_string( i ); }
    std::string operator()( double d ) const { return detail::format_double( d ); }
    std::string operator()( const std::string& s ) const { return detail::json( s ).dump(); }
  } render;
  return std::visit( render, v );
}

std::string_view to_string( compare_op op )
{
  switch ( op )
  {
  case compare_op::eq: return "==";
  case compare_op::ne: return "!=";
  case compare_op::lt: return "<";
  case compare_op::le: return "<=";
  case compare_op::gt: return ">";
  case compare_op::ge: return ">=";
  }
  return "?";
}

namespace
{

std::optional<double> as_number( const attribute_value& v )
{
  if ( const auto* i = std::get_if<std::int64_t>( &v ) )
    return static_cast<double>( *i );
  if ( const auto* d = std::get_if<double>( &v ) )
    return *d;
  return std::nullopt;
}

// Real-typed attributes always hold doubles so that 30 and 30.0 agree.
attribute_value coerce( const attribute_domain& domain, attribute_value v )
{
  if ( domain.type == attribute_type::real )
    if ( const auto* i = std::get_if<std::int64_t>( &v ) )
      return static_cast<double>( *i );
  return v;
}

} // namespace

bool attribute_domain::admits( const attribute_value& v ) const
{
  switch ( type )
  {
  case attribute_type::boolean:
    return std::holds_alternative<bool>( v );
  case attribute_type::integer:
  case attribute_type::real:
  {
    if ( type == attribute_type::integer && !std::holds_alternative<std::int64_t>( v ) )
      return false;
    auto x = as_number( v );
    if ( !x || !std::isfinite( *x ) )
      return false;
    return ( !min || *min <= *x ) && ( !max || *x <= *max );
  }
  case attribute_type::text:
  {
    const auto* s = std::get_if<std::string>( &v );
    if ( !s )
      return false;
    return choices.empty() || std::find( choices.begin(), choices.end(), *s ) != choices.end();
  }
  }
  return false;
}

const node_schema* vocabulary::find_node( std::string_view label ) const
{
  auto it = std::find_if( nodes.begin(), nodes.end(), [label]( const auto& s ) { return s.label == label; } );
  return it == nodes.end() ? nullptr : &*it;
}

bool vocabulary::has_edge_label( std::string_view label ) const
{
  return std::find( edge_labels.begin(), edge_labels.end(), label ) != edge_labels.end();
}

const node* design::find( node_id id ) const
{
  auto it = std::lower_bound( nodes.begin(), nodes.end(), id, []( const node& n, node_id x ) { return n.id < x; } );
  return it != nodes.end() && it->id == id ? &*it : nullptr;
}

std::vector<std::string> check_design( const vocabulary& vocab, const design& d )
{
  std::vector<std::string> problems;
  for ( std::size_t i = 0; i < d.nodes.size(); ++i )
  {
    const auto& n = d.nodes[i];
    const auto who = "node " + std::to_string( n.id );
    if ( i > 0 && d.nodes[i - 1].id >= n.id )
      problems.push_back( who + ": ids must be unique and ascending" );
    const auto* schema = vocab.find_node( n.label );
    if ( !schema )
    {
      problems.push_back( who + ": label '" + n.label + "' is not in the vocabulary" );
      continue;
    }
    for ( const auto& [name, value] : n.attributes )
    {
      auto it = schema->attributes.find( name );
      if ( it == schema->attributes.end() )
        problems.push_back( who + ": attribute '" + name + "' is not declared for '" + n.label + "'" );
      else if ( !it->second.admits( value ) )
        problems.push_back( who + ": attribute '" + name + "' = " + to_string( value ) + " is outside its domain" );
    }
    for ( const auto& [name, _] : schema->attributes )
      if ( !n.attributes.count( name ) )
        problems.push_back( who + ": attribute '" + name + "' is missing" );
  }
  for ( std::size_t i = 0; i < d.edges.size(); ++i )
  {
    const auto& e = d.edges[i];
    const auto who = "edge #" + std::to_string( i );
    if ( !d.find( e.source ) || !d.find( e.target ) )
      problems.push_back( who + ": endpoint does not exist" );
    if ( !vocab.has_edge_label( e.label ) )
      problems.push_back( who + ": label '" + e.label + "' is not in the vocabulary" );
  }
  return problems;
}

expression expression::constant( attribute_value v )
{
  expression e;
  e.op = kind::literal;
  e.literal = std::move( v );
  return e;
}

expression expression::attribute_of( std::string ref, std::string attribute )
{
  expression e;
  e.op = kind::reference;
  e.ref = std::move( ref );
  e.attribute = std::move( attribute );
  return e;
}

expression expression::binary( kind op, expression lhs, expression rhs )
{
  expression e;
  e.op = op;
  e.operands.push_back( std::move( lhs ) );
  e.operands.push_back( std::move( rhs ) );
  return e;
}

namespace
{

void check_expression( const expression& e, const rule& r, const std::string& where )
{
  if ( e.op == expression::kind::literal )
    return;
  if ( e.op == expression::kind::reference )
  {
    auto it = std::find_if( r.lhs_nodes.begin(), r.lhs_nodes.end(), [&]( const auto& p ) { return p.ref == e.ref; } );
    if ( it == r.lhs_nodes.end() )
      throw grammar_error( where + ": expression refers to unknown LHS node '" + e.ref + "'" );
    return;
  }
  if ( e.operands.size() != 2 )
    throw grammar_error( where + ": arithmetic expression needs two operands" );
  for ( const auto& operand : e.operands )
    check_expression( operand, r, where );
}

} // namespace

void check_rule( const vocabulary& vocab, const rule& r )
{
  const auto who = "rule '" + r.name + "'";
  if ( r.name.empty() )
    throw grammar_error( "rule with empty name" );

  std::set<std::string_view> lhs_refs, rhs_refs;
  for ( const auto& p : r.lhs_nodes )
  {
    if ( !lhs_refs.insert( p.ref ).second )
      throw grammar_error( who + ": duplicate LHS ref '" + p.ref + "'" );
    const auto* schema = vocab.find_node( p.label );
    if ( !schema )
      throw vocabulary_mismatch( who + ": LHS label '" + p.label + "' is not in the vocabulary" );
    for ( const auto& pred : p.predicates )
      if ( !schema->attributes.count( pred.attribute ) )
        throw vocabulary_mismatch( who + ": predicate on undeclared attribute '" + pred.attribute + "'" );
  }
  for ( const auto& p : r.rhs_nodes )
  {
    if ( !rhs_refs.insert( p.ref ).second )
      throw grammar_error( who + ": duplicate RHS ref '" + p.ref + "'" );
    const auto* schema = vocab.find_node( p.label );
    if ( !schema )
      throw vocabulary_mismatch( who + ": RHS label '" + p.label + "' is not in the vocabulary" );
    for ( const auto& [name, e] : p.attributes )
    {
      if ( !schema->attributes.count( name ) )
        throw vocabulary_mismatch( who + ": RHS sets undeclared attribute '" + name + "'" );
      check_expression( e, r, who );
    }
  }

  std::set<std::string_view> anchor_targets;
  for ( const auto& [from, to] : r.anchors )
  {
    if ( !lhs_refs.count( from ) )
      throw grammar_error( who + ": anchor from unknown LHS ref '" + from + "'" );
    if ( !rhs_refs.count( to ) )
      throw grammar_error( who + ": anchor to unknown RHS ref '" + to + "'" );
    if ( !anchor_targets.insert( to ).second )
      throw grammar_error( who + ": anchor map is not injective at '" + to + "'" );
  }

  // created nodes must define every attribute of their label
  for ( const auto& p : r.rhs_nodes )
  {
    if ( anchor_targets.count( p.ref ) )
      continue;
    for ( const auto& [name, _] : vocab.find_node( p.label )->attributes )
      if ( !p.attributes.count( name ) )
        throw vocabulary_mismatch( who + ": created node '" + p.ref + "' leaves attribute '" + name + "' unset" );
  }

  auto check_edges = [&]( const std::vector<pattern_edge>& edges, const std::set<std::string_view>& refs, const char* side ) {
    for ( const auto& e : edges )
    {
      if ( !refs.count( e.source ) || !refs.count( e.target ) )
        throw grammar_error( who + ": " + side + " edge refers to an unknown node ref" );
      if ( !vocab.has_edge_label( e.label ) )
        throw vocabulary_mismatch( who + ": " + side + " edge label '" + e.label + "' is not in the vocabulary" );
    }
  };
  check_edges( r.lhs_edges, lhs_refs, "LHS" );
  check_edges( r.rhs_edges, rhs_refs, "RHS" );
}

namespace
{

bool compare( const attribute_value& lhs, compare_op op, const attribute_value& rhs )
{
  std::partial_ordering order = std::partial_ordering::unordered;
  auto x = as_number( lhs );
  auto y = as_number( rhs );
  if ( x && y )
    order = *x <=> *y;
  else if ( lhs.index() == rhs.index() )
    order = lhs <=> rhs;
  else
    return op == compare_op::ne;

  switch ( op )
  {
  case compare_op::eq: return order == 0;
  case compare_op::ne: return order != 0;
  case compare_op::lt: return order < 0;
  case compare_op::le: return order <= 0;
  case compare_op::gt: return order > 0;
  case compare_op::ge: return order >= 0;
  }
  return false;
}

bool node_fits( const pattern_node& p, const node& n )
{
  if ( p.label != n.label )
    return false;
  for ( const auto& pred : p.predicates )
  {
    auto it = n.attributes.find( pred.attribute );
    if ( it == n.attributes.end() || !compare( it->second, pred.op, pred.operand ) )
      return false;
  }
  return true;
}

std::size_t lhs_index( const rule& r, std::string_view ref )
{
  for ( std::size_t i = 0; i < r.lhs_nodes.size(); ++i )
    if ( r.lhs_nodes[i].ref == ref )
      return i;
  throw grammar_error( "rule '" + r.name + "': unknown LHS ref '" + std::string( ref ) + "'" );
}

class matcher
{
public:
  matcher( const rule& r, const design& d ) : rule_( r ), design_( d )
  {
    for ( const auto& e : r.lhs_edges )
      lhs_edges_.push_back( { lhs_index( r, e.source ), lhs_index( r, e.target ) } );
  }

  std::vector<match> run()
  {
    current_.nodes.clear();
    current_.edges.clear();
    assign_node( 0 );
    return std::move( found_ );
  }

private:
  bool edge_possible( std::size_t source, std::size_t target, const std::string& label ) const
  {
    const auto s = current_.nodes[source];
    const auto t = current_.nodes[target];
    return std::any_of( design_.edges.begin(), design_.edges.end(), [&]( const edge& e ) {
      return e.source == s && e.target == t && e.label == label;
    } );
  }

  void assign_node( std::size_t k )
  {
    if ( k == rule_.lhs_nodes.size() )
    {
      assign_edge( 0 );
      return;
    }
    for ( const auto& n : design_.nodes )
    {
      if ( std::find( current_.nodes.begin(), current_.nodes.end(), n.id ) != current_.nodes.end() )
        continue;
      if ( !node_fits( rule_.lhs_nodes[k], n ) )
        continue;
      current_.nodes.push_back( n.id );
      bool consistent = true;
      for ( std::size_t i = 0; i < lhs_edges_.size() && consistent; ++i )
      {
        auto [s, t] = lhs_edges_[i];
        if ( s <= k && t <= k && ( s == k || t == k ) )
          consistent = edge_possible( s, t, rule_.lhs_edges[i].label );
      }
      if ( consistent )
        assign_node( k + 1 );
      current_.nodes.pop_back();
    }
  }

  void assign_edge( std::size_t k )
  {
    if ( k == lhs_edges_.size() )
    {
      found_.push_back( current_ );
      return;
    }
    const auto s = current_.nodes[lhs_edges_[k].first];
    const auto t = current_.nodes[lhs_edges_[k].second];
    for ( std::size_t i = 0; i < design_.edges.size(); ++i )
    {
      const auto& e = design_.edges[i];
      if ( e.source != s || e.target != t || e.label != rule_.lhs_edges[k].label )
        continue;
      if ( std::find( current_.edges.begin(), current_.edges.end(), i ) != current_.edges.end() )
        continue;
      current_.edges.push_back( i );
      assign_edge( k + 1 );
      current_.edges.pop_back();
    }
  }

  const rule& rule_;
  const design& design_;
  std::vector<std::pair<std::size_t, std::size_t>> lhs_edges_;
  match current_;
  std::vector<match> found_;
};

void require_conforming( const vocabulary& vocab, const design& d, const std::string& what )
{
  auto problems = check_design( vocab, d );
  if ( !problems.empty() )
    throw vocabulary_mismatch( what + " does not conform to the vocabulary: " + problems.front() );
}

void verify_match( const rule& r, const design& d, const match& m )
{
  if ( m.nodes.size() != r.lhs_nodes.size() || m.edges.size() != r.lhs_edges.size() )
    throw stale_match( "rule '" + r.name + "': match has the wrong shape" );
  for ( std::size_t i = 0; i < m.nodes.size(); ++i )
  {
    const auto* n = d.find( m.nodes[i] );
    if ( !n || !node_fits( r.lhs_nodes[i], *n ) )
      throw stale_match( "rule '" + r.name + "': node " + std::to_string( m.nodes[i] ) + " no longer matches '" +
                         r.lhs_nodes[i].ref + "'" );
    for ( std::size_t j = 0; j < i; ++j )
      if ( m.nodes[j] == m.nodes[i] )
        throw stale_match( "rule '" + r.name + "': match is not injective" );
  }
  for ( std::size_t i = 0; i < m.edges.size(); ++i )
  {
    const auto idx = m.edges[i];
    const auto& pe = r.lhs_edges[i];
    if ( idx >= d.edges.size() )
      throw stale_match( "rule '" + r.name + "': edge index out of range" );
    const auto& e = d.edges[idx];
    if ( e.label != pe.label || e.source != m.nodes[lhs_index( r, pe.source )] ||
         e.target != m.nodes[lhs_index( r, pe.target )] )
      throw stale_match( "rule '" + r.name + "': edge #" + std::to_string( idx ) + " no longer matches" );
    for ( std::size_t j = 0; j < i; ++j )
      if ( m.edges[j] == idx )
        throw stale_match( "rule '" + r.name + "': edge match is not injective" );
  }
}

attribute_value evaluate( const expression& e, const rule& r, const design& d, const match& m )
{
  using kind = expression::kind;
  switch ( e.op )
  {
  case kind::literal:
    return e.literal;
  case kind::reference:
  {
    const auto* n = d.find( m.nodes[lhs_index( r, e.ref )] );
    auto it = n->attributes.find( e.attribute );
    if ( it == n->attributes.end() )
      throw grammar_error( "rule '" + r.name + "': node '" + e.ref + "' has no attribute '" + e.attribute + "'" );
    return it->second;
  }
  default:
    break;
  }

  const auto lhs = evaluate( e.operands.at( 0 ), r, d, m );
  const auto rhs = evaluate( e.operands.at( 1 ), r, d, m );
  const auto* li = std::get_if<std::int64_t>( &lhs );
  const auto* ri = std::get_if<std::int64_t>( &rhs );
  if ( li && ri )
  {
    switch ( e.op )
    {
    case kind::add: return *li + *ri;
    case kind::subtract: return *li - *ri;
    case kind::multiply: return *li * *ri;
    case kind::divide:
      if ( *ri == 0 )
        throw grammar_error( "rule '" + r.name + "': division by zero" );
      if ( *li % *ri == 0 )
        return *li / *ri;
      return static_cast<double>( *li ) / static_cast<double>( *ri );
    case kind::min: return std::min( *li, *ri );
    case kind::max: return std::max( *li, *ri );
    default: break;
    }
  }
  auto x = as_number( lhs );
  auto y = as_number( rhs );
  if ( !x || !y )
    throw grammar_error( "rule '" + r.name + "': arithmetic on a non-numeric attribute" );
  switch ( e.op )
  {
  case kind::add: return *x + *y;
  case kind::subtract: return *x - *y;
  case kind::multiply: return *x * *y;
  case kind::divide:
    if ( *y == 0.0 )
      throw grammar_error( "rule '" + r.name + "': division by zero" );
    return *x / *y;
  case kind::min: return std::min( *x, *y );
  case kind::max: return std::max( *x, *y );
  default: break;
  }
  throw grammar_error( "rule '" + r.name + "': malformed expression" );
}

design apply_unchecked( const vocabulary& vocab, const rule& r, const design& d, const match& m )
{
  verify_match( r, d, m );

  std::unordered_set<node_id> removed;
  for ( std::size_t i = 0; i < r.lhs_nodes.size(); ++i )
    if ( !r.anchors.count( r.lhs_nodes[i].ref ) )
      removed.insert( m.nodes[i] );

  std::vector<bool> matched_edge( d.edges.size(), false );
  for ( auto idx : m.edges )
    matched_edge[idx] = true;
  for ( std::size_t i = 0; i < d.edges.size(); ++i )
  {
    const auto& e = d.edges[i];
    if ( !matched_edge[i] && ( removed.count( e.source ) || removed.count( e.target ) ) )
      throw dangling_edge( "rule '" + r.name + "': deleting node " +
                           std::to_string( removed.count( e.source ) ? e.source : e.target ) +
                           " would leave edge #" + std::to_string( i ) + " dangling" );
  }

  // RHS ref -> design node id; attribute values use the pre-rewrite design
  std::map<std::string, node_id, std::less<>> placed;
  std::map<node_id, node> rewritten;
  for ( const auto& n : d.nodes )
    if ( !removed.count( n.id ) )
      rewritten.emplace( n.id, n );

  node_id next_id = d.nodes.empty() ? 0 : d.nodes.back().id + 1;
  for ( const auto& rn : r.rhs_nodes )
  {
    const auto* schema = vocab.find_node( rn.label );
    auto anchor = std::find_if( r.anchors.begin(), r.anchors.end(), [&]( const auto& a ) { return a.second == rn.ref; } );
    node result;
    if ( anchor != r.anchors.end() )
    {
      result = *d.find( m.nodes[lhs_index( r, anchor->first )] );
      if ( result.label != rn.label )
        std::erase_if( result.attributes, [schema]( const auto& kv ) { return !schema->attributes.count( kv.first ); } );
      result.label = rn.label;
    }
    else
    {
      result.id = next_id++;
      result.label = rn.label;
    }
    for ( const auto& [name, e] : rn.attributes )
      result.attributes[name] = coerce( schema->attributes.find( name )->second, evaluate( e, r, d, m ) );
    placed.emplace( rn.ref, result.id );
    rewritten[result.id] = std::move( result );
  }

  design out;
  out.nodes.reserve( rewritten.size() );
  for ( auto& [_, n] : rewritten )
    out.nodes.push_back( std::move( n ) );
  for ( std::size_t i = 0; i < d.edges.size(); ++i )
    if ( !matched_edge[i] )
      out.edges.push_back( d.edges[i] );
  for ( const auto& e : r.rhs_edges )
    out.edges.push_back( { placed.at( e.source ), placed.at( e.target ), e.label } );

  require_conforming( vocab, out, "result of rule '" + r.name + "'" );
  return out;
}

} // namespace

std::vector<match> find_matches( const vocabulary& vocab, const rule& r, const design& d )
{
  check_rule( vocab, r );
  require_conforming( vocab, d, "design" );
  return matcher( r, d ).run();
}

design apply( const vocabulary& vocab, const rule& r, const design& d, const match& m )
{
  check_rule( vocab, r );
  require_conforming( vocab, d, "design" );
  return apply_unchecked( vocab, r, d, m );
}

const rule* grammar::find_rule( std::string_view name ) const
{
  auto it = std::find_if( rules.begin(), rules.end(), [name]( const auto& r ) { return r.name == name; } );
  return it == rules.end() ? nullptr : &*it;
}

void check_grammar( const grammar& g )
{
  std::set<std::string_view> labels;
  for ( const auto& s : g.vocabulary.nodes )
  {
    if ( s.label.empty() || !labels.insert( s.label ).second )
      throw grammar_error( "node label '" + s.label + "' is empty or declared twice" );
    for ( const auto& [name, domain] : s.attributes )
      if ( domain.min && domain.max && *domain.min > *domain.max )
        throw grammar_error( "attribute '" + name + "' of '" + s.label + "' has min > max" );
  }
  std::set<std::string_view> edge_labels;
  for ( const auto& l : g.vocabulary.edge_labels )
    if ( l.empty() || !edge_labels.insert( l ).second )
      throw grammar_error( "edge label '" + l + "' is empty or declared twice" );

  require_conforming( g.vocabulary, g.axiom, "axiom" );
  std::set<std::string_view> names;
  for ( const auto& r : g.rules )
  {
    if ( !names.insert( r.name ).second )
      throw grammar_error( "duplicate rule name '" + r.name + "'" );
    check_rule( g.vocabulary, r );
  }
}

design replay( const grammar& g, const derivation& steps )
{
  check_grammar( g );
  design current = g.axiom;
  for ( const auto& step : steps )
  {
    const auto* r = g.find_rule( step.rule );
    if ( !r )
      throw grammar_error( "derivation refers to unknown rule '" + step.rule + "'" );
    current = apply_unchecked( g.vocabulary, *r, current, step.at );
  }
  return current;
}

std::vector<generated_design> generate( const grammar& g, generation_limits limits )
{
  if ( limits.max_depth == 0 || limits.max_designs == 0 )
    throw grammar_error( "generation limits must be positive" );
  check_grammar( g );

  std::vector<generated_design> out;
  std::unordered_set<std::string> seen;

  auto canonical = canonical_form( g.axiom );
  seen.insert( canonical );
  out.push_back( { g.axiom, {}, std::move( canonical ) } );

  std::size_t level_begin = 0;
  for ( std::size_t depth = 1; depth <= limits.max_depth; ++depth )
  {
    const std::size_t level_end = out.size();
    for ( std::size_t parent = level_begin; parent < level_end; ++parent )
    {
      for ( const auto& r : g.rules )
      {
        // `out` may reallocate below, so hold the parent by value
        const design base = out[parent].result;
        for ( const auto& m : matcher( r, base ).run() )
        {
          if ( out.size() >= limits.max_designs )
            return out;
          auto child = apply_unchecked( g.vocabulary, r, base, m );
          auto key = canonical_form( child );
          if ( !seen.insert( key ).second )
            continue;
          auto history = out[parent].derivation;
          history.push_back( { r.name, m } );
          out.push_back( { std::move( child ), std::move( history ), std::move( key ) } );
        }
      }
    }
    if ( level_end == out.size() )
      break;
    level_begin = level_end;
  }
  return out;
}

grammar modify( const grammar& g, const grammar_edit& edit )
{
  grammar next = g;
  struct
  {
    grammar& target;

    void operator()( const add_rule& e ) const
    {
      if ( target.find_rule( e.rule.name ) )
        throw grammar_error( "rule '" + e.rule.name + "' already exists" );
      check_rule( target.vocabulary, e.rule );
      auto pos = std::min( e.position.value_or( target.rules.size() ), target.rules.size() );
      target.rules.insert( target.rules.begin() + static_cast<std::ptrdiff_t>( pos ), e.rule );
    }
    void operator()( const remove_rule& e ) const
    {
      auto it = std::find_if( target.rules.begin(), target.rules.end(), [&]( const auto& r ) { return r.name == e.name; } );
      if ( it == target.rules.end() )
        throw grammar_error( "unknown rule '" + e.name + "'" );
      target.rules.erase( it );
    }
    void operator()( const replace_axiom& e ) const
    {
      require_conforming( target.vocabulary, e.axiom, "axiom" );
      target.axiom = e.axiom;
    }
  } visitor{ next };
  std::visit( visitor, edit );
  return next;
}

std::string to_dot( const design& d, std::string_view name )
{
  std::ostringstream os;
  os << "digraph " << detail::json( std::string( name ) ).dump() << " {\n";
  for ( const auto& n : d.nodes )
  {
    std::string label = n.label;
    for ( const auto& [k, v] : n.attributes )
      label += "\n" + k + "=" + ( std::holds_alternative<std::string>( v ) ? std::get<std::string>( v ) : to_string( v ) );
    os << "  n" << n.id << " [label=" << detail::json( label ).dump() << "];\n";
  }
  for ( const auto& e : d.edges )
    os << "  n" << e.source << " -> n" << e.target << " [label=" << detail::json( e.label ).dump() << "];\n";
  os << "}\n";
  return os.str();
}

} // namespace designkit::grammar
