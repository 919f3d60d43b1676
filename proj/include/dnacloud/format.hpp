// The .dnac container and FASTA export.
//
// Grammar, byte exact:   [] | ['SEQ'] | ['SEQ', 'SEQ', ...]
// Single ASCII quotes, elements joined by comma + one space, no trailing
// newline. Sequence content is restricted to uppercase ASCII letters at this
// layer; anything else is malformed_container with the byte offset.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnacloud/base.hpp"

namespace dnacloud {

class DnacWriter {
public:
    explicit DnacWriter(std::ostream& out) : out_(&out) {}

    void push(const Oligo& oligo);
    // Writes the closing bracket; returns total bytes written.
    std::uint64_t finish();

private:
    std::ostream* out_;
    std::uint64_t bytes_ = 0;
    std::uint64_t count_ = 0;
    bool finished_ = false;
};

// Pull parser over a buffered stream; elements may straddle read boundaries.
class DnacReader {
public:
    explicit DnacReader(std::istream& in, std::size_t buffer_size = 65536);

    // Next quoted element, or nullopt once the container closed cleanly
    // (which also verifies nothing trails the closing bracket).
    std::optional<std::string> next();

private:
    int get();
    [[noreturn]] void fail(const std::string& what);

    std::istream* in_;
    std::vector<char> buffer_;
    std::size_t pos_ = 0, fill_ = 0;
    std::uint64_t offset_ = 0;  // absolute offset of the next byte
    enum class State { open, first_element, in_sequence, after_element, done };
    State state_ = State::open;
    std::string pending_;
};

// Converts one container element to an Oligo (position = `ordinal`).
// Throws bad_oligo for wrong length, non-ACGT letters, or adjacent equal
// bases.
Oligo oligo_from_text(std::string_view text, std::uint32_t ordinal);

std::uint64_t write_dnac(std::span<const Oligo> oligos, std::ostream& out);
std::vector<Oligo> read_dnac(std::istream& in);

// One FASTA record per oligo: ">dnacloud|id=<file_id>|chunk=<position>" then
// the sequence line. Returns bytes written.
std::uint64_t export_fasta(std::span<const Oligo> oligos, std::uint8_t file_id,
                           std::ostream& out);

}  // namespace dnacloud
