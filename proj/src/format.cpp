#include "dnacloud/format.hpp"

#include <string>

#include "dnacloud/errors.hpp"
#include "dnacloud/kernels.hpp"

namespace dnacloud {

namespace {

void write_or_throw(std::ostream& out, const char* data, std::size_t n) {
    out.write(data, static_cast<std::streamsize>(n));
    if (!out) throw CodecError(Errc::io_failure, "write failure");
}

void write_sequence(std::ostream& out, const Oligo& oligo) {
    char text[kOligoLength];
    kernels::active().codes_to_ascii(oligo.bases, kOligoLength, text);
    write_or_throw(out, text, kOligoLength);
}

}  // namespace

void DnacWriter::push(const Oligo& oligo) {
    if (count_ == 0)
        write_or_throw(*out_, "['", 2);
    else
        write_or_throw(*out_, "', '", 4);
    write_sequence(*out_, oligo);
    bytes_ += (count_ == 0 ? 2 : 4) + kOligoLength;
    ++count_;
}

std::uint64_t DnacWriter::finish() {
    if (finished_) return bytes_;
    if (count_ == 0)
        write_or_throw(*out_, "[]", 2);
    else
        write_or_throw(*out_, "']", 2);
    bytes_ += 2;
    finished_ = true;
    return bytes_;
}

DnacReader::DnacReader(std::istream& in, std::size_t buffer_size)
    : in_(&in), buffer_(buffer_size ? buffer_size : 1) {}

int DnacReader::get() {
    if (pos_ == fill_) {
        in_->read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
        fill_ = static_cast<std::size_t>(in_->gcount());
        pos_ = 0;
        if (in_->bad()) throw CodecError(Errc::io_failure, "read failure");
        if (fill_ == 0) return -1;
    }
    ++offset_;
    return static_cast<unsigned char>(buffer_[pos_++]);
}

void DnacReader::fail(const std::string& what) {
    // offset_ already counts the offending byte
    const std::uint64_t at = offset_ == 0 ? 0 : offset_ - 1;
    throw CodecError(Errc::malformed_container,
                     what + " at byte " + std::to_string(at), at);
}

std::optional<std::string> DnacReader::next() {
    pending_.clear();
    while (true) {
        const int c = get();
        switch (state_) {
            case State::open:
                if (c < 0) fail("empty input, expected '['");
                if (c != '[') fail("expected '['");
                state_ = State::first_element;
                break;
            case State::first_element:
                if (c < 0) fail("unterminated container");
                if (c == ']') {
                    state_ = State::done;
                    break;
                }
                if (c != '\'') fail("expected quote or ']'");
                state_ = State::in_sequence;
                break;
            case State::in_sequence:
                if (c < 0) fail("unterminated element");
                if (c == '\'') {
                    state_ = State::after_element;
                    return pending_;
                }
                if (c < 'A' || c > 'Z') fail("byte outside sequence alphabet");
                pending_.push_back(static_cast<char>(c));
                break;
            case State::after_element:
                if (c < 0) fail("unterminated container");
                if (c == ']') {
                    state_ = State::done;
                    break;
                }
                if (c != ',') fail("expected ', ' or ']'");
                if (get() != ' ') fail("expected space after comma");
                if (get() != '\'') fail("expected quote");
                state_ = State::in_sequence;
                break;
            case State::done:
                if (c >= 0) fail("trailing data after ']'");
                return std::nullopt;
        }
    }
}

Oligo oligo_from_text(std::string_view text, std::uint32_t ordinal) {
    if (text.size() != kOligoLength)
        throw CodecError(Errc::bad_oligo,
                         "oligo " + std::to_string(ordinal) + " has length " +
                             std::to_string(text.size()) + ", expected 117",
                         ordinal);
    Oligo oligo;
    oligo.position = ordinal;
    const std::size_t bad =
        kernels::active().ascii_to_codes(text.data(), text.size(), oligo.bases);
    if (bad != text.size())
        throw CodecError(Errc::bad_oligo,
                         "oligo " + std::to_string(ordinal) +
                             " contains a non-ACGT base at offset " +
                             std::to_string(bad),
                         ordinal);
    const std::size_t adj = kernels::active().find_adjacent_equal(
        oligo.bases, kOligoLength, 0xFF);
    if (adj != kOligoLength)
        throw CodecError(Errc::bad_oligo,
                         "oligo " + std::to_string(ordinal) +
                             " repeats a base at offset " + std::to_string(adj),
                         ordinal);
    return oligo;
}

std::uint64_t write_dnac(std::span<const Oligo> oligos, std::ostream& out) {
    DnacWriter writer(out);
    for (const Oligo& oligo : oligos) writer.push(oligo);
    return writer.finish();
}

std::vector<Oligo> read_dnac(std::istream& in) {
    DnacReader reader(in);
    std::vector<Oligo> oligos;
    while (auto text = reader.next()) {
        oligos.push_back(
            oligo_from_text(*text, static_cast<std::uint32_t>(oligos.size())));
    }
    return oligos;
}

std::uint64_t export_fasta(std::span<const Oligo> oligos, std::uint8_t file_id,
                           std::ostream& out) {
    std::uint64_t bytes = 0;
    char text[kOligoLength + 1];
    for (const Oligo& oligo : oligos) {
        std::string header = ">dnacloud|id=" + std::to_string(file_id) +
                             "|chunk=" + std::to_string(oligo.position) + "\n";
        write_or_throw(out, header.data(), header.size());
        kernels::active().codes_to_ascii(oligo.bases, kOligoLength, text);
        text[kOligoLength] = '\n';
        write_or_throw(out, text, kOligoLength + 1);
        bytes += header.size() + kOligoLength + 1;
    }
    return bytes;
}

}  // namespace dnacloud
