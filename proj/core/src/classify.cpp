#include <designkit/classify.hpp>

#include <algorithm>

namespace designkit::classify
{

std::string_view to_string( novelty_level n )
{
  switch ( n )
  {
  case novelty_level::routine: return "routine";
  case novelty_level::innovative: return "innovative";
  case novelty_level::creative: return "creative";
  }
  return "?";
}

std::string_view to_string( capability_level c )
{
  switch ( c )
  {
  case capability_level::none: return "none";
  case capability_level::limited: return "limited";
  case capability_level::full: return "full";
  }
  return "?";
}

std::string_view to_string( method m )
{
  switch ( m )
  {
  case method::grammar_based: return "grammar_based";
  case method::functional_synthesis: return "functional_synthesis";
  case method::analogy_based: return "analogy_based";
  }
  return "?";
}

std::string_view to_string( verdict v )
{
  switch ( v )
  {
  case verdict::applicable: return "applicable";
  case verdict::limited: return "limited";
  case verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

void check_profile( const problem_profile& p )
{
  if ( !p.pi )
  {
    if ( p.decomposable )
      throw error( "a decomposable problem needs a pi value" );
    return;
  }
  if ( *p.pi < 0 || *p.pi > 1 )
    throw error( "pi must lie in [0, 1], got " + designkit::to_string( *p.pi ) );
  if ( !p.decomposable && *p.pi != rational( 0 ) && *p.pi != rational( 1 ) )
    throw error( "a black box has pi 0 or 1, got " + designkit::to_string( *p.pi ) );
}

capability_matrix default_matrix()
{
  using enum capability_level;
  return {
      { method::grammar_based, true, full, full, none },
      { method::functional_synthesis, true, full, full, none },
      { method::analogy_based, true, full, limited, none },
  };
}

void check_matrix( const capability_matrix& m )
{
  for ( std::size_t i = 0; i < m.size(); ++i )
    for ( std::size_t j = 0; j < i; ++j )
      if ( m[i].method == m[j].method )
        throw error( "method " + std::string( to_string( m[i].method ) ) + " appears twice" );
}

std::size_t method_report::count( verdict v ) const
{
  return static_cast<std::size_t>(
      std::count_if( verdicts.begin(), verdicts.end(), [v]( const auto& mv ) { return mv.verdict == v; } ) );
}

capability_level capability_for( const method_capabilities& m, novelty_level n )
{
  switch ( n )
  {
  case novelty_level::routine: return m.handles_interdependencies;
  case novelty_level::innovative: return std::min( m.handles_interdependencies, m.handles_innovation );
  case novelty_level::creative: return std::min( m.handles_interdependencies, m.handles_creativity );
  }
  return capability_level::none;
}

namespace
{

std::string pi_note( const problem_profile& p )
{
  if ( !p.pi )
    return "";
  return " (PI = " + designkit::to_string( *p.pi ) + ")";
}

method_verdict judge( const problem_profile& p, const method_capabilities& m )
{
  method_verdict out{ m.method, verdict::inapplicable, "" };
  if ( m.requires_decomposable && !p.decomposable )
  {
    out.rationale = "needs a decomposable problem; a black box offers no subfunctions to synthesize";
    return out;
  }

  const auto level = capability_for( m, p.novelty );
  switch ( level )
  {
  case capability_level::full: out.verdict = verdict::applicable; break;
  case capability_level::limited: out.verdict = verdict::limited; break;
  case capability_level::none: out.verdict = verdict::inapplicable; break;
  }

  const auto interdependencies = " interdependencies" + pi_note( p );
  if ( p.novelty == novelty_level::creative && level == capability_level::none )
    out.rationale = "creativity gap: the method cannot introduce design variables absent from its knowledge";
  else if ( level == capability_level::none )
    out.rationale = "no capability for " + std::string( to_string( p.novelty ) ) + " design";
  else if ( m.handles_interdependencies < capability_level::full &&
            m.handles_interdependencies <= level )
    out.rationale = std::string( to_string( level ) ) + " support for" + interdependencies;
  else if ( p.novelty == novelty_level::routine )
    out.rationale = std::string( to_string( level ) ) + " support for routine design with" + interdependencies;
  else
    out.rationale = std::string( to_string( level ) ) + " support for " + std::string( to_string( p.novelty ) ) +
                    " design with" + interdependencies;
  return out;
}

} // namespace

method_report recommend( const problem_profile& profile, const capability_matrix& matrix )
{
  check_profile( profile );
  check_matrix( matrix );
  method_report report;
  for ( const auto& m : matrix )
    report.verdicts.push_back( judge( profile, m ) );
  return report;
}

} // namespace designkit::classify
