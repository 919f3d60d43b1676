#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dnacloud {

enum class Errc {
    invalid_prefix,         // 6-trit path matches no codeword
    homopolymer_violation,  // adjacent equal bases where forbidden
    trit_overflow,          // integer does not fit the requested trit width
    input_too_large,        // footer or chunk index cannot represent the stream
    io_failure,
    too_short,              // DNA string below one segment length
    malformed_container,    // .dnac grammar violation
    bad_oligo,              // element with wrong length/alphabet/adjacency
    wrong_file_id,          // no oligo carried the expected ID
    coverage_gap,           // position with zero surviving votes
    vote_tie,               // position where the plurality is not unique
    bad_footer,             // footer length or pad region inconsistent
    dangling_trits,         // leftover trits after the last codeword
    empty_pool,
    out_of_order,           // streaming reassembly saw a chunk behind the window
};

class CodecError : public std::runtime_error {
public:
    CodecError(Errc code, std::string msg, std::uint64_t position = 0)
        : std::runtime_error(std::move(msg)), code_(code), position_(position) {}

    Errc code() const { return code_; }
    // byte offset, DNA position or chunk number, depending on the error
    std::uint64_t position() const { return position_; }

private:
    Errc code_;
    std::uint64_t position_;
};

}  // namespace dnacloud
