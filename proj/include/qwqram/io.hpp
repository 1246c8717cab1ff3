#pragma once

// Line-oriented text formats.
//
// Memory file, one cell per line:      ADDRESS<TAB>DATA
// Address file, one term per line:     ADDRESS<TAB>RE[<TAB>IM]
//   ADDRESS is an n-character binary string (MSB first) or "d:<decimal>";
//   DATA likewise with m characters. '#' starts a comment; blank lines are
//   ignored.
//
// State dump:
//   qwqram-state v1 n=<n> m=<m>
//   <w> <l> <c> <ADDRESS> <DATA> <RE> <IM>      (canonical order)
// Reals use 17 significant digits so dumps round-trip exactly.
//
// Trace: "qwqram-trace v1 steps=<k>" followed by k blocks, each a
// "step <label>" line and a complete state dump.

#include <string>
#include <string_view>

#include "qwqram/dense.hpp"
#include "qwqram/pipeline.hpp"
#include "qwqram/state.hpp"

namespace qwqram {

// Throws ParseError for malformed lines and duplicate addresses, ShapeError
// (with the line number in the message) for widths or values that do not
// fit the shape.
MemoryTable parse_memory(std::string_view text, const TreeShape& shape);
std::string serialize_memory(const MemoryTable& memory);

// Returns the canonical superposition. Zero total norm and empty input throw
// ParseError.
AddressSuperposition parse_addresses(std::string_view text, const TreeShape& shape,
                                     Normalization normalization = Normalization::On);
std::string serialize_addresses(const AddressSuperposition& addresses, const TreeShape& shape);

std::string serialize_state(const SparseState& state);
SparseState parse_state(std::string_view text);

std::string serialize_trace(const TraceRecord& trace);
TraceRecord parse_trace(std::string_view text);

// Non-normative JSON renderings of the same content.
std::string state_to_json(const SparseState& state);
std::string trace_to_json(const TraceRecord& trace);

// Debug dump of the nonzero entries: "qwqram-matrix v1 n=<n> m=<m> dim=<D>"
// then "<row> <col> <RE> <IM>" lines.
std::string serialize_matrix(const DenseMatrix& matrix, const TreeShape& shape);

// Binary rendering, MSB first, exactly `width` characters.
std::string to_binary(std::uint64_t value, unsigned width);

} // namespace qwqram
