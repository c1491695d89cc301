#include "cli.hpp"

#include <designkit/casebase.hpp>
#include <designkit/classify.hpp>
#include <designkit/funcstruct.hpp>
#include <designkit/grammar.hpp>
#include <designkit/novelty.hpp>
#include <designkit/synth.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace designkit::cli
{

namespace
{

using ordered_json = nlohmann::ordered_json;

enum class exit_code : int
{
  success = 0,
  negative = 1,
  input_error = 2
};

// Input problem tied to a file, reported with exit code 2.
class input_error : public error
{
public:
  using error::error;
};

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw input_error( path + ": cannot open file" );
  std::ostringstream text;
  text << in.rdbuf();
  if ( in.bad() )
    throw input_error( path + ": read error" );
  return text.str();
}

void write_file( const std::string& path, const std::string& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << text ) )
    throw input_error( path + ": cannot write file" );
}

// Parses a file, prefixing any error with its path.
template<typename Parse>
auto load( const std::string& path, Parse parse )
{
  const auto text = read_file( path );
  try
  {
    return parse( text );
  }
  catch ( const error& e )
  {
    throw input_error( path + ": " + e.what() );
  }
}

std::string decimal( const rational& r, int digits = 6 )
{
  char buffer[64];
  auto result = std::to_chars( buffer, buffer + sizeof buffer, to_double( r ), std::chars_format::fixed, digits );
  return std::string( buffer, result.ptr );
}

ordered_json rational_json( const rational& r )
{
  return { { "exact", to_string( r ) }, { "decimal", to_double( r ) } };
}

void emit( std::ostream& out, const ordered_json& doc )
{
  out << doc.dump( 2 ) << '\n';
}

struct options
{
  std::string format = "text";
  bool json() const { return format == "json"; }
};

// ---------------------------------------------------------------- metrics

struct metrics_args
{
  std::string path;
};

exit_code run_metrics( const metrics_args& a, const options& o, std::ostream& out )
{
  const auto problem = load( a.path, []( const std::string& t ) { return funcstruct::parse_structure( t ); } );
  if ( auto report = funcstruct::validate( problem ); !report.ok() )
  {
    std::string message = a.path + ": invalid structure";
    for ( const auto& v : report.violations )
      message += "\n  " + std::string( funcstruct::to_string( v.kind ) ) + ": " + v.message;
    throw input_error( message );
  }
  const auto counts = funcstruct::interdependency_terms( problem );
  const auto pi = funcstruct::interdependency_index( problem );
  const bool decomposable = funcstruct::is_decomposable( problem );

  if ( o.json() )
  {
    ordered_json doc;
    doc["decomposable"] = decomposable;
    doc["vertices"] = counts.vertices;
    doc["high_degree"] = counts.high_degree;
    doc["pi"] = rational_json( pi );
    if ( decomposable )
    {
      const auto& fs = std::get<funcstruct::function_structure>( problem );
      const auto degrees = funcstruct::degrees( fs );
      doc["degrees"] = ordered_json::object();
      for ( std::size_t i = 0; i < fs.vertices.size(); ++i )
        doc["degrees"][fs.vertices[i].id] = degrees[i];
    }
    emit( out, doc );
  }
  else
  {
    out << "decomposable: " << ( decomposable ? "yes" : "no (black box)" ) << '\n';
    if ( decomposable )
      out << "vertices with degree > 2: " << counts.high_degree << " of " << counts.vertices << '\n';
    out << "PI = " << to_string( pi ) << " (" << decimal( pi ) << ")\n";
  }
  return exit_code::success;
}

// ---------------------------------------------------------------- novelty

struct novelty_args
{
  std::string kb;
  std::string design;
  std::string feasible; // "", "true" or "false"
};

exit_code run_novelty( const novelty_args& a, const options& o, std::ostream& out )
{
  const auto kb = load( a.kb, []( const std::string& t ) { return novelty::parse_knowledge_base( t ); } );
  const auto d = load( a.design, []( const std::string& t ) { return novelty::parse_design( t ); } );
  std::optional<bool> feasible = d.feasible;
  if ( !a.feasible.empty() )
    feasible = a.feasible == "true";
  if ( !feasible )
    throw input_error( a.design + ": no feasibility verdict; set \"feasible\" or pass --feasible" );

  const auto report = novelty::assess( kb, d, *feasible );
  if ( o.json() )
  {
    ordered_json doc;
    doc["innovation"] = rational_json( report.innovation );
    doc["creativity"] = rational_json( report.creativity );
    doc["category"] = std::string( novelty::to_string( report.category ) );
    doc["feasible"] = *feasible;
    doc["unexpected"] = report.unexpected;
    doc["new_variables"] = report.new_variables;
    emit( out, doc );
  }
  else
  {
    auto names = []( const std::vector<std::string>& v ) {
      std::string s;
      for ( const auto& n : v )
        s += ( s.empty() ? "" : ", " ) + n;
      return s.empty() ? std::string( "-" ) : s;
    };
    out << "I = " << to_string( report.innovation ) << " (" << decimal( report.innovation ) << ")\n";
    out << "C = " << to_string( report.creativity ) << " (" << decimal( report.creativity ) << ")\n";
    out << "category: " << novelty::to_string( report.category ) << '\n';
    out << "unexpected values: " << names( report.unexpected ) << '\n';
    out << "new variables: " << names( report.new_variables ) << '\n';
  }
  return exit_code::success;
}

// ---------------------------------------------------------------- grammar

struct grammar_args
{
  std::string path;
  std::size_t max_depth = 3;
  std::size_t max_designs = 1000;
  bool dot = false;
};

exit_code run_grammar( const grammar_args& a, const options& o, std::ostream& out )
{
  const auto g = load( a.path, []( const std::string& t ) { return grammar::parse_grammar( t ); } );
  std::vector<grammar::generated_design> designs;
  try
  {
    designs = grammar::generate( g, { a.max_depth, a.max_designs } );
  }
  catch ( const grammar::grammar_error& e )
  {
    throw input_error( a.path + ": " + e.what() );
  }

  if ( a.dot )
  {
    for ( std::size_t i = 0; i < designs.size(); ++i )
      out << grammar::to_dot( designs[i].result, "design_" + std::to_string( i ) );
    return exit_code::success;
  }

  auto steps_text = []( const grammar::derivation& steps ) {
    std::string s;
    for ( const auto& step : steps )
    {
      s += ( s.empty() ? "" : " ; " ) + step.rule + "@";
      for ( std::size_t k = 0; k < step.at.nodes.size(); ++k )
        s += ( k ? "," : "" ) + std::to_string( step.at.nodes[k] );
    }
    return s.empty() ? std::string( "axiom" ) : s;
  };

  if ( o.json() )
  {
    ordered_json doc;
    doc["count"] = designs.size();
    doc["designs"] = ordered_json::array();
    for ( const auto& gd : designs )
    {
      ordered_json entry;
      entry["depth"] = gd.derivation.size();
      entry["derivation"] = ordered_json::array();
      for ( const auto& step : gd.derivation )
        entry["derivation"].push_back( { { "rule", step.rule }, { "nodes", step.at.nodes }, { "edges", step.at.edges } } );
      entry["design"] = ordered_json::parse( grammar::serialize_design( gd.result ) );
      doc["designs"].push_back( std::move( entry ) );
    }
    emit( out, doc );
  }
  else
  {
    out << designs.size() << " designs (max depth " << a.max_depth << ", max designs " << a.max_designs << ")\n";
    for ( std::size_t i = 0; i < designs.size(); ++i )
      out << "#" << i << "  nodes=" << designs[i].result.nodes.size() << " edges=" << designs[i].result.edges.size()
          << "  " << steps_text( designs[i].derivation ) << '\n';
  }
  return exit_code::success;
}

// ---------------------------------------------------------------- cbr

struct cbr_args
{
  std::string base;
  std::string query;
  std::size_t k = 3;
  std::string simspec;
  std::string requirements;
};

exit_code run_cbr( const cbr_args& a, const options& o, std::ostream& out )
{
  const auto base = load( a.base, []( const std::string& t ) { return cbr::parse_case_base( t ); } );
  const auto problem = load( a.query, []( const std::string& t ) { return funcstruct::parse_structure( t ); } );
  if ( !funcstruct::is_decomposable( problem ) )
    throw input_error( a.query + ": the query must be a function structure" );
  const auto& query = std::get<funcstruct::function_structure>( problem );
  if ( auto report = funcstruct::validate( query ); !report.ok() )
    throw input_error( a.query + ": " + report.violations.front().message );
  cbr::similarity_spec spec;
  if ( !a.simspec.empty() )
    spec = load( a.simspec, []( const std::string& t ) { return cbr::parse_similarity_spec( t ); } );
  std::vector<cbr::requirement> requirements;
  if ( !a.requirements.empty() )
    requirements = load( a.requirements, []( const std::string& t ) { return cbr::parse_requirements( t ); } );

  if ( base.empty() )
  {
    if ( o.json() )
      emit( out, { { "ranking", ordered_json::array() } } );
    else
      out << "case base is empty; nothing retrieved\n";
    return exit_code::negative;
  }

  const auto ranking = cbr::retrieve( base, spec, query, a.k );
  const auto revised = cbr::revise( cbr::reuse( *base.find( ranking.front().id ), query ), requirements );
  const auto& draft = revised.draft;

  if ( o.json() )
  {
    ordered_json doc;
    doc["ranking"] = ordered_json::array();
    for ( const auto& r : ranking )
      doc["ranking"].push_back( { { "id", r.id }, { "score", rational_json( r.score ) } } );
    ordered_json reuse;
    reuse["case"] = draft.case_id;
    reuse["description"] = draft.description;
    reuse["components"] = ordered_json::array();
    for ( const auto& c : draft.components )
      reuse["components"].push_back( { { "name", c.part.name },
                                       { "realizes", c.part.realizes },
                                       { "query_vertex", c.query_vertex ? ordered_json( *c.query_vertex ) : nullptr } } );
    reuse["gaps"] = draft.gaps;
    doc["reuse"] = std::move( reuse );
    doc["revise"] = ordered_json::array();
    for ( const auto& c : revised.checks )
      doc["revise"].push_back( { { "requirement", c.name }, { "satisfied", c.satisfied } } );
    doc["open_tasks"] = revised.open_tasks;
    emit( out, doc );
  }
  else
  {
    for ( std::size_t i = 0; i < ranking.size(); ++i )
      out << i + 1 << ". " << ranking[i].id << "  " << decimal( ranking[i].score, 4 ) << " ("
          << to_string( ranking[i].score ) << ")\n";
    out << "reuse " << draft.case_id << ":\n";
    for ( const auto& c : draft.components )
      out << "  " << c.part.name << " -> " << c.query_vertex.value_or( "(unmapped)" ) << '\n';
    out << "gaps: " << draft.gaps.size() << '\n';
    for ( const auto& c : revised.checks )
      out << "  [" << ( c.satisfied ? "ok" : "open" ) << "] " << c.name << '\n';
  }
  return exit_code::success;
}

// ---------------------------------------------------------------- synth

struct synth_args
{
  std::string requirement;
  std::string topology;
  std::size_t max_gates = 7;
  std::string fs_out;
};

exit_code run_synth( const synth_args& a, const options& o, std::ostream& out )
{
  const auto req = load( a.requirement, []( const std::string& t ) { return synth::parse_requirement( t ); } );
  std::optional<synth::circuit> result;
  synth::search_statistics stats;
  if ( !a.topology.empty() )
  {
    const auto topo = load( a.topology, []( const std::string& t ) { return synth::parse_topology( t ); } );
    try
    {
      result = synth::synthesize_assignment( topo, req );
    }
    catch ( const error& e )
    {
      throw input_error( a.topology + ": " + e.what() );
    }
  }
  else
    result = synth::synthesize_topology( req, a.max_gates, &stats );

  if ( !result )
  {
    if ( o.json() )
      emit( out, { { "status", "unsat" } } );
    else
      out << "UNSAT: no circuit "
          << ( a.topology.empty() ? "with at most " + std::to_string( a.max_gates ) + " gates" : "on the given topology" )
          << '\n';
    return exit_code::negative;
  }

  if ( !a.fs_out.empty() )
    write_file( a.fs_out, funcstruct::serialize_structure( synth::to_function_structure( *result ) ) );

  const auto pi = funcstruct::interdependency_index( synth::to_function_structure( *result ) );
  if ( o.json() )
  {
    ordered_json doc;
    doc["status"] = "sat";
    doc["gates"] = result->size();
    doc["pi"] = rational_json( pi );
    doc["circuit"] = ordered_json::parse( synth::serialize_circuit( *result ) );
    emit( out, doc );
  }
  else
  {
    const auto& t = result->topology;
    auto name = [&]( const synth::signal& s ) {
      return s.source == synth::signal::kind::input ? t.inputs[s.index] : "g" + std::to_string( s.index );
    };
    out << "SAT: " << result->size() << " gates, PI = " << to_string( pi ) << '\n';
    for ( std::size_t k = 0; k < t.slots.size(); ++k )
    {
      out << "  g" << k << " = " << synth::to_string( result->gates[k] ) << "(";
      for ( std::size_t i = 0; i < t.slots[k].inputs.size(); ++i )
        out << ( i ? ", " : "" ) << name( t.slots[k].inputs[i] );
      out << ")\n";
    }
    for ( const auto& po : t.outputs )
      out << "  " << po.name << " = g" << po.slot << '\n';
  }
  return exit_code::success;
}

// ---------------------------------------------------------------- classify

struct classify_args
{
  std::string profile;
  std::string matrix;
};

exit_code run_classify( const classify_args& a, const options& o, std::ostream& out )
{
  const auto profile = load( a.profile, []( const std::string& t ) { return classify::parse_profile( t ); } );
  auto matrix = classify::default_matrix();
  if ( !a.matrix.empty() )
    matrix = load( a.matrix, []( const std::string& t ) { return classify::parse_matrix( t ); } );
  const auto report = classify::recommend( profile, matrix );
  const bool none = !report.any_usable();

  if ( o.json() )
    out << classify::serialize_report( report );
  else
  {
    for ( const auto& v : report.verdicts )
      out << classify::to_string( v.method ) << ": " << classify::to_string( v.verdict ) << " - " << v.rationale
          << '\n';
    if ( none )
      out << "no applicable method\n";
  }
  return none ? exit_code::negative : exit_code::success;
}

void add_format( CLI::App& cmd, options& o )
{
  cmd.add_option( "--format", o.format, "Report format" )->check( CLI::IsMember( { "json", "text" } ) );
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "designkit: design-problem metrics and synthesis engines", "designkit" };
  app.require_subcommand( 1 );
  options opts;
  add_format( app, opts );

  metrics_args metrics;
  auto* metrics_cmd = app.add_subcommand( "metrics", "Decomposability and interdependency index of a .fs.json" );
  metrics_cmd->add_option( "structure", metrics.path, "Function structure or black box" )->required();
  add_format( *metrics_cmd, opts );

  novelty_args nov;
  auto* novelty_cmd = app.add_subcommand( "novelty", "Innovation and creativity indices of a design" );
  novelty_cmd->add_option( "kb", nov.kb, "Knowledge base (.kb.json)" )->required();
  novelty_cmd->add_option( "design", nov.design, "Design instance (.design.json)" )->required();
  novelty_cmd->add_option( "--feasible", nov.feasible, "Override the feasibility verdict" )
      ->check( CLI::IsMember( { "true", "false" } ) );
  add_format( *novelty_cmd, opts );

  grammar_args gram;
  auto* grammar_cmd = app.add_subcommand( "grammar-generate", "Breadth-first design generation from a grammar" );
  grammar_cmd->add_option( "grammar", gram.path, "Grammar (.grammar.json)" )->required();
  grammar_cmd->add_option( "--max-depth", gram.max_depth, "Derivation depth limit" )
      ->capture_default_str()->check( CLI::PositiveNumber );
  grammar_cmd->add_option( "--max-designs", gram.max_designs, "Design count limit" )
      ->capture_default_str()->check( CLI::PositiveNumber );
  grammar_cmd->add_flag( "--dot", gram.dot, "Emit DOT graphs instead of a report" );
  add_format( *grammar_cmd, opts );

  cbr_args cbr;
  auto setup_cbr = [&]( CLI::App& cmd ) {
    cmd.add_option( "base", cbr.base, "Case base (.cases.json)" )->required();
    cmd.add_option( "query", cbr.query, "Query structure (.fs.json)" )->required();
    cmd.add_option( "-k", cbr.k, "Number of cases to rank" )->capture_default_str()->check( CLI::PositiveNumber );
    cmd.add_option( "--simspec", cbr.simspec, "Similarity weights (.simspec.json)" );
    cmd.add_option( "--requirements", cbr.requirements, "Revision requirements for the best case" );
    add_format( cmd, opts );
  };
  auto* cbr_flat = app.add_subcommand( "cbr-retrieve", "Retrieve, reuse and revise from a case base" );
  setup_cbr( *cbr_flat );
  auto* cbr_group = app.add_subcommand( "cbr", "Case-based reasoning" );
  cbr_group->require_subcommand( 1 );
  auto* cbr_nested = cbr_group->add_subcommand( "retrieve", "Retrieve, reuse and revise from a case base" );
  setup_cbr( *cbr_nested );

  synth_args syn;
  auto* synth_cmd = app.add_subcommand( "synth", "Boolean circuit synthesis from a truth table" );
  synth_cmd->add_option( "requirement", syn.requirement, "Truth table (.req.json)" )->required();
  synth_cmd->add_option( "--topology", syn.topology, "Fixed topology (.topo.json); assign gates only" );
  synth_cmd->add_option( "--max-gates", syn.max_gates, "Gate budget for topology search" )
      ->capture_default_str()->check( CLI::PositiveNumber );
  synth_cmd->add_option( "--fs-out", syn.fs_out, "Also write the circuit as a function structure" );
  add_format( *synth_cmd, opts );

  classify_args cls;
  auto* classify_cmd = app.add_subcommand( "classify", "Recommend synthesis methods for a problem profile" );
  classify_cmd->add_option( "profile", cls.profile, "Problem profile (.profile.json)" )->required();
  classify_cmd->add_option( "--matrix", cls.matrix, "Capability matrix override" );
  add_format( *classify_cmd, opts );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( const CLI::CallForHelp& )
  {
    out << app.help();
    return 0;
  }
  catch ( const CLI::ParseError& e )
  {
    err << "designkit: " << e.what() << '\n';
    return static_cast<int>( exit_code::input_error );
  }

  try
  {
    exit_code code = exit_code::success;
    if ( metrics_cmd->parsed() )
      code = run_metrics( metrics, opts, out );
    else if ( novelty_cmd->parsed() )
      code = run_novelty( nov, opts, out );
    else if ( grammar_cmd->parsed() )
      code = run_grammar( gram, opts, out );
    else if ( cbr_flat->parsed() || cbr_nested->parsed() )
      code = run_cbr( cbr, opts, out );
    else if ( synth_cmd->parsed() )
      code = run_synth( syn, opts, out );
    else if ( classify_cmd->parsed() )
      code = run_classify( cls, opts, out );
    return static_cast<int>( code );
  }
  catch ( const std::exception& e )
  {
    err << "designkit: " << e.what() << '\n';
    return static_cast<int>( exit_code::input_error );
  }
}

} // namespace designkit::cli
