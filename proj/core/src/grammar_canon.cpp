#include <designkit/grammar.hpp>

#include "json_io.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

// Canonical labeling by colour refinement plus individualization: every
// branch of the search tree is explored, so the minimum leaf string is a
// complete isomorphism invariant. Exponential on highly symmetric graphs,
// which design graphs are not.

namespace designkit::grammar
{

namespace
{

std::string typed( const attribute_value& v )
{
  struct
  {
    std::string operator()( bool b ) const { return b ? "b:1" : "b:0"; }
    std::string operator()( std::int64_t i ) const { return "i:" + std::to_string( i ); }
    std::string operator()( double d ) const { return "r:" + detail::format_double( d ); }
    std::string operator()( const std::string& s ) const { return "s:" + detail::json( s ).dump(); }
  } render;
  return std::visit( render, v );
}

std::string node_key( const node& n )
{
  std::string key = detail::json( n.label ).dump() + "{";
  bool first = true;
  for ( const auto& [name, value] : n.attributes )
  {
    if ( !first )
      key += ",";
    first = false;
    key += detail::json( name ).dump() + "=" + typed( value );
  }
  return key + "}";
}

struct indexed_edge
{
  std::size_t source;
  std::size_t target;
  std::size_t label; // rank among distinct edge labels
};

class canonizer
{
public:
  explicit canonizer( const design& d )
  {
    const auto n = d.nodes.size();
    keys_.reserve( n );
    for ( const auto& v : d.nodes )
      keys_.push_back( node_key( v ) );

    std::vector<std::string> labels;
    for ( const auto& e : d.edges )
      labels.push_back( e.label );
    std::sort( labels.begin(), labels.end() );
    labels.erase( std::unique( labels.begin(), labels.end() ), labels.end() );
    edge_labels_ = labels;

    auto index_of = [&d]( node_id id ) {
      auto it = std::lower_bound( d.nodes.begin(), d.nodes.end(), id,
                                  []( const node& v, node_id x ) { return v.id < x; } );
      return static_cast<std::size_t>( it - d.nodes.begin() );
    };
    out_.resize( n );
    in_.resize( n );
    for ( const auto& e : d.edges )
    {
      auto label = static_cast<std::size_t>(
          std::lower_bound( labels.begin(), labels.end(), e.label ) - labels.begin() );
      indexed_edge ie{ index_of( e.source ), index_of( e.target ), label };
      edges_.push_back( ie );
      out_[ie.source].push_back( ie );
      in_[ie.target].push_back( ie );
    }
  }

  std::string run()
  {
    std::vector<std::size_t> colours( keys_.size() );
    auto sorted = keys_;
    std::sort( sorted.begin(), sorted.end() );
    sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
    for ( std::size_t v = 0; v < keys_.size(); ++v )
      colours[v] = static_cast<std::size_t>( std::lower_bound( sorted.begin(), sorted.end(), keys_[v] ) - sorted.begin() );
    search( refine( std::move( colours ) ) );
    return *best_;
  }

private:
  using signature = std::tuple<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>,
                               std::vector<std::pair<std::size_t, std::size_t>>>;

  // Iterated until the number of colour classes stops growing. The new
  // colour is the rank of (old colour, out-neighbourhood, in-neighbourhood),
  // so refinement never merges classes and never reorders them.
  std::vector<std::size_t> refine( std::vector<std::size_t> colours ) const
  {
    const auto n = colours.size();
    auto classes = count_classes( colours );
    while ( true )
    {
      std::vector<signature> sigs( n );
      for ( std::size_t v = 0; v < n; ++v )
      {
        auto& [own, outs, ins] = sigs[v];
        own = colours[v];
        for ( const auto& e : out_[v] )
          outs.emplace_back( e.label, colours[e.target] );
        for ( const auto& e : in_[v] )
          ins.emplace_back( e.label, colours[e.source] );
        std::sort( outs.begin(), outs.end() );
        std::sort( ins.begin(), ins.end() );
      }
      auto sorted = sigs;
      std::sort( sorted.begin(), sorted.end() );
      sorted.erase( std::unique( sorted.begin(), sorted.end() ), sorted.end() );
      for ( std::size_t v = 0; v < n; ++v )
        colours[v] = static_cast<std::size_t>( std::lower_bound( sorted.begin(), sorted.end(), sigs[v] ) - sorted.begin() );
      auto next = sorted.size();
      if ( next == classes )
        return colours;
      classes = next;
    }
  }

  static std::size_t count_classes( const std::vector<std::size_t>& colours )
  {
    auto sorted = colours;
    std::sort( sorted.begin(), sorted.end() );
    return static_cast<std::size_t>( std::unique( sorted.begin(), sorted.end() ) - sorted.begin() );
  }

  void search( const std::vector<std::size_t>& colours )
  {
    const auto n = colours.size();
    // smallest colour shared by more than one node
    std::vector<std::size_t> size( n, 0 );
    for ( auto c : colours )
      ++size[c];
    std::optional<std::size_t> cell;
    for ( std::size_t c = 0; c < n; ++c )
      if ( size[c] > 1 )
      {
        cell = c;
        break;
      }

    if ( !cell )
    {
      auto leaf = encode( colours );
      if ( !best_ || leaf < *best_ )
        best_ = std::move( leaf );
      return;
    }

    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( colours[v] != *cell )
        continue;
      auto individualized = colours;
      for ( auto& c : individualized )
        c = 2 * c + 1;
      individualized[v] = 2 * colours[v];
      search( refine( std::move( individualized ) ) );
    }
  }

  std::string encode( const std::vector<std::size_t>& colours ) const
  {
    const auto n = colours.size();
    std::vector<std::size_t> order( n );
    for ( std::size_t v = 0; v < n; ++v )
      order[colours[v]] = v;

    std::string text = "n" + std::to_string( n ) + ":";
    for ( auto v : order )
      text += keys_[v] + ";";

    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
    for ( const auto& e : edges_ )
      edges.emplace_back( colours[e.source], colours[e.target], e.label );
    std::sort( edges.begin(), edges.end() );
    text += "e" + std::to_string( edges.size() ) + ":";
    for ( const auto& [s, t, l] : edges )
      text += std::to_string( s ) + ">" + std::to_string( t ) + ":" + detail::json( edge_labels_[l] ).dump() + ";";
    return text;
  }

  std::vector<std::string> keys_;
  std::vector<std::string> edge_labels_;
  std::vector<indexed_edge> edges_;
  std::vector<std::vector<indexed_edge>> out_, in_;
  std::optional<std::string> best_;
};

} // namespace

std::string canonical_form( const design& d )
{
  if ( d.nodes.empty() )
    return "n0:e" + std::to_string( d.edges.size() ) + ":";
  return canonizer( d ).run();
}

} // namespace designkit::grammar
