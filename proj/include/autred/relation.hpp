#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace autred {

enum class WinningCondition {
    Direct,
    Delayed,
    Fair,
    BackwardDirect,      // accepting and initial states matched pointwise
    BackwardFiniteWord,  // initial states matched pointwise
    BackwardCounting,
};

std::string to_string(WinningCondition c);

// A binary relation between two dense state ranges, stored as a bit matrix.
// Tags record how it was obtained: the game condition, the lookahead, whether
// the transitive closure has been taken, and whether rows and columns range
// over the same automaton.
class Relation {
public:
    Relation() = default;
    Relation(uint32_t rows, uint32_t cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    bool get(uint32_t r, uint32_t c) const {
        return (words_[static_cast<size_t>(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(uint32_t r, uint32_t c) {
        words_[static_cast<size_t>(r) * wpr_ + (c >> 6)] |= uint64_t{1} << (c & 63);
    }
    void clear(uint32_t r, uint32_t c) {
        words_[static_cast<size_t>(r) * wpr_ + (c >> 6)] &= ~(uint64_t{1} << (c & 63));
    }
    void fill();

    uint64_t* row(uint32_t r) { return words_.data() + static_cast<size_t>(r) * wpr_; }
    const uint64_t* row(uint32_t r) const {
        return words_.data() + static_cast<size_t>(r) * wpr_;
    }
    uint32_t words_per_row() const { return wpr_; }

    uint64_t count() const;
    std::vector<std::pair<uint32_t, uint32_t>> pairs() const;  // sorted
    std::string dump() const;  // one "r c" pair per line, sorted

    bool operator==(const Relation& other) const;

    // Reflexive-transitive closure (square relations only).
    Relation transitive_closure() const;

    // Strict part x R y && !(y R x) of a preorder.  Requires a closed
    // relation when lookahead > 1, since raw lookahead games need not be
    // transitive; throws std::logic_error otherwise.
    Relation strict_part() const;

    bool is_reflexive() const;
    bool is_transitive() const;

    // -------- provenance tags --------
    WinningCondition condition = WinningCondition::Direct;
    uint8_t lookahead = 1;
    bool closed = false;          // transitive closure taken
    bool cross = false;           // rows and cols from different automata
    bool exact_semantics = true;  // false for clamped/approximated games

private:
    uint32_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace autred
