#pragma once

/*!
  \file synth.hpp
  \brief Functional synthesis of combinational Boolean circuits.

  Two problems are solved by exact search:

  - gate assignment: given a topology (which slot reads which signals),
    pick a gate type per slot so the circuit realizes a truth table;
  - topology generation: find a circuit with the fewest gates, by trying
    canonical topologies in order of increasing gate count and running
    gate assignment on each.

  Every returned circuit has been checked against all 2^n rows of the
  requirement with `evaluate`. UNSAT is reported as an empty optional.
*/

#include <designkit/error.hpp>
#include <designkit/funcstruct.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace designkit::synth
{

/*! \brief Gate vocabulary, in the order used for lexicographic tie-breaks. */
enum class gate_type
{
  identity,
  not_gate,
  and_gate,
  or_gate,
  xor_gate
};

inline constexpr gate_type all_gate_types[] = { gate_type::identity, gate_type::not_gate, gate_type::and_gate,
                                                 gate_type::or_gate, gate_type::xor_gate };

std::size_t arity( gate_type g );
std::string_view to_string( gate_type g );

/*! \brief Largest supported number of primary inputs (one 64-bit truth table). */
inline constexpr std::size_t max_inputs = 6;

struct signal
{
  enum class kind
  {
    input,
    gate
  };

  signal::kind source = kind::input;
  std::size_t index = 0;

  static signal primary( std::size_t i ) { return { kind::input, i }; }
  static signal gate( std::size_t slot ) { return { kind::gate, slot }; }

  bool operator==( const signal& ) const = default;
};

struct slot
{
  std::vector<signal> inputs; // size is the arity, 1 or 2

  bool operator==( const slot& ) const = default;
};

struct primary_output
{
  std::string name;
  std::size_t slot = 0;

  bool operator==( const primary_output& ) const = default;
};

struct topology
{
  std::vector<std::string> inputs;
  std::vector<synth::slot> slots;
  std::vector<primary_output> outputs;

  bool operator==( const topology& ) const = default;
};

/*! \brief Throws `designkit::error` unless slots only read primary inputs or
 *  earlier slots, arities are 1 or 2, and every slot reaches an output. */
void check_topology( const topology& t );

/*! \brief Complete truth table. Row r assigns input i the bit
 *  `(r >> (n - 1 - i)) & 1`, so row order follows the binary count with the
 *  first input as most significant bit. */
struct requirement
{
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::uint64_t> tables; // one per output, bit r = value at row r

  std::size_t rows() const { return std::size_t{ 1 } << inputs.size(); }
  bool expected( std::size_t row, std::size_t output ) const { return ( tables[output] >> row ) & 1u; }

  /*! Builds a requirement from one output bit vector per row. */
  static requirement from_rows( std::vector<std::string> inputs, std::vector<std::string> outputs,
                                const std::vector<std::vector<bool>>& row_outputs );

  bool operator==( const requirement& ) const = default;
};

void check_requirement( const requirement& r );

struct circuit
{
  synth::topology topology;
  std::vector<gate_type> gates; // one per slot

  std::size_t size() const { return gates.size(); }

  bool operator==( const circuit& ) const = default;
};

void check_circuit( const circuit& c );

/*! \brief Output bits for one input row. Throws on a width mismatch. */
std::vector<bool> evaluate( const circuit& c, const std::vector<bool>& inputs );

/*! \brief True iff `evaluate` agrees with `r` on every row. */
bool satisfies( const circuit& c, const requirement& r );

/*! \brief Lexicographically first gate assignment realizing `r`, if any.
 *  Throws if the topology and requirement disagree on input/output counts. */
std::optional<circuit> synthesize_assignment( const topology& t, const requirement& r );

struct search_statistics
{
  std::size_t topologies = 0; // canonical topologies tried, outputs bound
  std::size_t gate_count = 0; // size of the last layer searched
};

/*! \brief Fewest-gate circuit with at most `max_gates` gates, if any. */
std::optional<circuit> synthesize_topology( const requirement& r, std::size_t max_gates,
                                            search_statistics* stats = nullptr );

/*! \brief One vertex per gate, one flow per wire, terminals per primary
 *  input and output. Unused primary inputs keep their terminal. */
funcstruct::function_structure to_function_structure( const circuit& c );

requirement parse_requirement( std::string_view text );
std::string serialize_requirement( const requirement& r );

/*! \brief Reads a `.topo.json`; slot `"gate"` fields, if present, are ignored. */
topology parse_topology( std::string_view text );
std::string serialize_topology( const topology& t );

circuit parse_circuit( std::string_view text );
std::string serialize_circuit( const circuit& c );

} // namespace designkit::synth
