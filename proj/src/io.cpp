#include "qwqram/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace qwqram {

namespace {

constexpr std::string_view kStateMagic = "qwqram-state";
constexpr std::string_view kTraceMagic = "qwqram-trace";
constexpr std::string_view kVersion = "v1";

struct Line {
    std::size_t number;
    std::string_view text;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \r");
    return s.substr(first, last - first + 1);
}

// All lines, with numbers, before any comment handling.
std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 1;
    while (!text.empty()) {
        const auto end = text.find('\n');
        lines.push_back({number++, text.substr(0, end)});
        if (end == std::string_view::npos) break;
        text.remove_prefix(end + 1);
    }
    return lines;
}

// Comment-stripped, nonblank lines.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    for (auto line : split_lines(text)) {
        const auto hash = line.text.find('#');
        if (hash != std::string_view::npos) line.text = line.text.substr(0, hash);
        line.text = trim(line.text);
        if (!line.text.empty()) out.push_back(line);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> fields;
    while (true) {
        const auto pos = s.find(sep);
        fields.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return fields;
}

std::uint64_t parse_unsigned(std::string_view s, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    }
    return value;
}

double parse_real(std::string_view s, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError(line, "invalid real '" + std::string(s) + "'");
    }
    return value;
}

// n-char binary (MSB first) or "d:<decimal>". `limit_bits` is the register width.
std::uint64_t parse_word(std::string_view s, unsigned width, std::size_t line, const char* what) {
    if (s.starts_with("d:")) {
        const std::uint64_t value = parse_unsigned(s.substr(2), line, what);
        if (value >= (std::uint64_t{1} << width)) {
            throw ShapeError("line " + std::to_string(line) + ": " + what + " " + std::to_string(value) +
                             " does not fit in " + std::to_string(width) + " bits");
        }
        return value;
    }
    if (s.empty() || s.find_first_not_of("01") != std::string_view::npos) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    }
    if (s.size() != width) {
        throw ShapeError("line " + std::to_string(line) + ": " + what + " '" + std::string(s) + "' has " +
                         std::to_string(s.size()) + " bits, expected " + std::to_string(width));
    }
    std::uint64_t value = 0;
    for (const char c : s) value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    return value;
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

std::string state_header(const TreeShape& shape) {
    return std::string(kStateMagic) + " " + std::string(kVersion) + " n=" + std::to_string(shape.address_bits()) +
           " m=" + std::to_string(shape.data_bits());
}

unsigned parse_key(std::string_view field, std::string_view key, std::size_t line) {
    if (!field.starts_with(key)) throw ParseError(line, "expected '" + std::string(key) + "<value>'");
    const std::uint64_t value = parse_unsigned(field.substr(key.size()), line, "header value");
    if (value > 1u << 20) throw ParseError(line, "header value too large");
    return static_cast<unsigned>(value);
}

TreeShape parse_state_header(std::string_view header, std::size_t line) {
    const auto fields = split(header, ' ');
    if (fields.size() != 4 || fields[0] != kStateMagic) throw ParseError(line, "missing qwqram-state header");
    if (fields[1] != kVersion) throw ParseError(line, "unsupported state version '" + std::string(fields[1]) + "'");
    const unsigned n = parse_key(fields[2], "n=", line);
    const unsigned m = parse_key(fields[3], "m=", line);
    try {
        return TreeShape(n, m);
    } catch (const DomainError& e) {
        throw ParseError(line, e.what());
    }
}

SparseState parse_state_lines(const std::vector<Line>& lines, std::size_t begin, std::size_t end) {
    if (begin >= end) throw ParseError(0, "empty state dump");
    const TreeShape shape = parse_state_header(trim(lines[begin].text), lines[begin].number);
    std::vector<SparseState::Entry> entries;
    std::set<BasisState> seen;
    for (std::size_t i = begin + 1; i < end; ++i) {
        const auto& [number, raw] = lines[i];
        const auto text = trim(raw);
        if (text.empty()) continue;
        const auto f = split(text, ' ');
        if (f.size() != 7) throw ParseError(number, "expected 7 fields 'w l c ADDRESS DATA RE IM'");
        BasisState b;
        b.node.position = parse_unsigned(f[0], number, "node position");
        const std::uint64_t level = parse_unsigned(f[1], number, "node level");
        const std::uint64_t chirality = parse_unsigned(f[2], number, "chirality");
        if (level > shape.address_bits() || b.node.position >= (std::uint64_t{1} << level)) {
            throw ParseError(number, "node out of range");
        }
        if (chirality > 1) throw ParseError(number, "chirality must be 0 or 1");
        b.node.level = static_cast<unsigned>(level);
        b.chirality = static_cast<std::uint8_t>(chirality);
        b.address = parse_word(f[3], shape.address_bits(), number, "address");
        b.data = parse_word(f[4], shape.data_bits(), number, "data word");
        const Amplitude amp{parse_real(f[5], number), parse_real(f[6], number)};
        if (!seen.insert(b).second) throw ParseError(number, "duplicate basis label");
        entries.push_back({b, amp});
    }
    return SparseState(shape, std::move(entries));
}

nlohmann::ordered_json state_json(const SparseState& state) {
    const TreeShape& shape = state.shape();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [b, amp] : state.entries()) {
        entries.push_back({{"w", b.node.position},
                           {"l", b.node.level},
                           {"c", b.chirality},
                           {"address", to_binary(b.address, shape.address_bits())},
                           {"data", to_binary(b.data, shape.data_bits())},
                           {"re", amp.real()},
                           {"im", amp.imag()}});
    }
    return {{"n", shape.address_bits()}, {"m", shape.data_bits()}, {"entries", std::move(entries)}};
}

} // namespace

std::string to_binary(std::uint64_t value, unsigned width) {
    std::string out(width, '0');
    for (unsigned i = 0; i < width; ++i) {
        if ((value >> i) & 1u) out[width - 1 - i] = '1';
    }
    return out;
}

MemoryTable parse_memory(std::string_view text, const TreeShape& shape) {
    MemoryTable memory(shape);
    std::set<std::uint64_t> seen;
    for (const auto& [number, line] : content_lines(text)) {
        const auto f = split(line, '\t');
        if (f.size() != 2) throw ParseError(number, "expected 'ADDRESS<TAB>DATA'");
        const std::uint64_t address = parse_word(f[0], shape.address_bits(), number, "address");
        const std::uint64_t word = parse_word(f[1], shape.data_bits(), number, "data word");
        if (!seen.insert(address).second) {
            throw ParseError(number, "duplicate address " + to_binary(address, shape.address_bits()));
        }
        memory.set(address, word);
    }
    return memory;
}

std::string serialize_memory(const MemoryTable& memory) {
    std::string out;
    for (const auto& [address, word] : memory.cells()) {
        out += to_binary(address, memory.shape().address_bits()) + "\t" + to_binary(word, memory.shape().data_bits()) +
               "\n";
    }
    return out;
}

AddressSuperposition parse_addresses(std::string_view text, const TreeShape& shape, Normalization normalization) {
    std::vector<AddressSuperposition::Term> terms;
    for (const auto& [number, line] : content_lines(text)) {
        const auto f = split(line, '\t');
        if (f.size() != 2 && f.size() != 3) throw ParseError(number, "expected 'ADDRESS<TAB>RE[<TAB>IM]'");
        const std::uint64_t address = parse_word(f[0], shape.address_bits(), number, "address");
        const double re = parse_real(f[1], number);
        const double im = f.size() == 3 ? parse_real(f[2], number) : 0.0;
        terms.push_back({address, {re, im}});
    }
    if (terms.empty()) throw ParseError(0, "address file has no terms");
    try {
        return AddressSuperposition(std::move(terms)).canonical(normalization);
    } catch (const DomainError& e) {
        throw ParseError(0, e.what());
    }
}

std::string serialize_addresses(const AddressSuperposition& addresses, const TreeShape& shape) {
    std::string out;
    for (const auto& t : addresses.terms()) {
        out += to_binary(t.address, shape.address_bits()) + "\t" + format_real(t.amplitude.real()) + "\t" +
               format_real(t.amplitude.imag()) + "\n";
    }
    return out;
}

std::string serialize_state(const SparseState& state) {
    const TreeShape& shape = state.shape();
    std::string out = state_header(shape) + "\n";
    for (const auto& [b, amp] : canonical_entries(state)) {
        out += std::to_string(b.node.position) + " " + std::to_string(b.node.level) + " " +
               std::to_string(b.chirality) + " " + to_binary(b.address, shape.address_bits()) + " " +
               to_binary(b.data, shape.data_bits()) + " " + format_real(amp.real()) + " " + format_real(amp.imag()) +
               "\n";
    }
    return out;
}

SparseState parse_state(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t begin = 0;
    while (begin < lines.size() && trim(lines[begin].text).empty()) ++begin;
    return parse_state_lines(lines, begin, lines.size());
}

std::string serialize_trace(const TraceRecord& trace) {
    std::string out =
        std::string(kTraceMagic) + " " + std::string(kVersion) + " steps=" + std::to_string(trace.steps.size()) + "\n";
    for (const auto& step : trace.steps) {
        out += "step " + step.label + "\n";
        out += serialize_state(step.state);
    }
    return out;
}

TraceRecord parse_trace(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(0, "empty trace");
    const auto header = split(trim(lines[0].text), ' ');
    if (header.size() != 3 || header[0] != kTraceMagic) throw ParseError(1, "missing qwqram-trace header");
    if (header[1] != kVersion) throw ParseError(1, "unsupported trace version '" + std::string(header[1]) + "'");
    const unsigned expected = parse_key(header[2], "steps=", 1);

    TraceRecord trace;
    std::size_t i = 1;
    while (i < lines.size()) {
        const auto text_i = trim(lines[i].text);
        if (text_i.empty()) {
            ++i;
            continue;
        }
        if (!text_i.starts_with("step ")) throw ParseError(lines[i].number, "expected 'step <label>'");
        const std::string label(trim(text_i.substr(5)));
        if (label.empty() || label.find(' ') != std::string::npos) throw ParseError(lines[i].number, "invalid label");
        std::size_t end = i + 1;
        while (end < lines.size() && !trim(lines[end].text).starts_with("step ")) ++end;
        trace.steps.push_back({label, parse_state_lines(lines, i + 1, end)});
        i = end;
    }
    if (trace.steps.size() != expected) {
        throw ParseError(0, "trace declares " + std::to_string(expected) + " steps but holds " +
                                std::to_string(trace.steps.size()));
    }
    return trace;
}

std::string state_to_json(const SparseState& state) { return state_json(state).dump(2) + "\n"; }

std::string trace_to_json(const TraceRecord& trace) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& step : trace.steps) steps.push_back({{"label", step.label}, {"state", state_json(step.state)}});
    return nlohmann::ordered_json{{"steps", std::move(steps)}}.dump(2) + "\n";
}

std::string serialize_matrix(const DenseMatrix& matrix, const TreeShape& shape) {
    std::ostringstream out;
    out << "qwqram-matrix " << kVersion << " n=" << shape.address_bits() << " m=" << shape.data_bits()
        << " dim=" << matrix.dim() << "\n";
    for (std::size_t i = 0; i < matrix.dim(); ++i) {
        for (std::size_t j = 0; j < matrix.dim(); ++j) {
            const Amplitude v = matrix(i, j);
            if (v == Amplitude{}) continue;
            out << i << " " << j << " " << format_real(v.real()) << " " << format_real(v.imag()) << "\n";
        }
    }
    return out.str();
}

} // namespace qwqram
