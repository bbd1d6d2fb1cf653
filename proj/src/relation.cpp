#include "autred/relation.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace autred {

std::string to_string(WinningCondition c) {
    switch (c) {
        case WinningCondition::Direct: return "direct";
        case WinningCondition::Delayed: return "delayed";
        case WinningCondition::Fair: return "fair";
        case WinningCondition::BackwardDirect: return "backward-direct";
        case WinningCondition::BackwardFiniteWord: return "backward-finite";
        case WinningCondition::BackwardCounting: return "backward-counting";
    }
    return "?";
}

Relation::Relation(uint32_t rows, uint32_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    words_.assign(static_cast<size_t>(rows_) * wpr_, 0);
}

void Relation::fill() {
    for (uint32_t r = 0; r < rows_; ++r) {
        uint64_t* w = row(r);
        for (uint32_t i = 0; i < wpr_; ++i) w[i] = ~uint64_t{0};
        if (cols_ % 64) w[wpr_ - 1] = (uint64_t{1} << (cols_ % 64)) - 1;
    }
}

uint64_t Relation::count() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::vector<std::pair<uint32_t, uint32_t>> Relation::pairs() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t r = 0; r < rows_; ++r)
        for (uint32_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.push_back({r, c});
    return out;
}

std::string Relation::dump() const {
    std::ostringstream out;
    for (auto [r, c] : pairs()) out << r << ' ' << c << '\n';
    return out.str();
}

bool Relation::operator==(const Relation& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

Relation Relation::transitive_closure() const {
    if (rows_ != cols_) throw std::logic_error("closure needs a square relation");
    Relation r = *this;
    for (uint32_t p = 0; p < rows_; ++p) r.set(p, p);
    // Floyd-Warshall over bit rows: if q reaches k, or in k's row

    for (uint32_t k = 0; k < rows_; ++k) {
        const uint64_t* rk = r.row(k);
        for (uint32_t p = 0; p < rows_; ++p) {
            if (!r.get(p, k)) continue;
            uint64_t* rp = r.row(p);
            for (uint32_t i = 0; i < wpr_; ++i) rp[i] |= rk[i];
        }
    }
    r.closed = true;
    return r;
}

Relation Relation::strict_part() const {
    if (rows_ != cols_) throw std::logic_error("strict part needs a square relation");
    if (lookahead > 1 && !closed)
        throw std::logic_error(
            "strict part of a raw lookahead game is not meaningful; take the "
            "transitive closure first");
    Relation s(rows_, cols_);
    s.condition = condition;
    s.lookahead = lookahead;
    s.closed = closed;
    s.cross = cross;
    s.exact_semantics = exact_semantics;
    for (uint32_t p = 0; p < rows_; ++p)
        for (uint32_t q = 0; q < cols_; ++q)
            if (p != q && get(p, q) && !get(q, p)) s.set(p, q);
    return s;
}

bool Relation::is_reflexive() const {
    if (rows_ != cols_) return false;
    for (uint32_t p = 0; p < rows_; ++p)
        if (!get(p, p)) return false;
    return true;
}

bool Relation::is_transitive() const {
    if (rows_ != cols_) return false;
    for (uint32_t p = 0; p < rows_; ++p)
        for (uint32_t q = 0; q < cols_; ++q) {
            if (!get(p, q)) continue;
            const uint64_t* rq = row(q);
            const uint64_t* rp = row(p);
            for (uint32_t i = 0; i < wpr_; ++i)
                if (rq[i] & ~rp[i]) return false;
        }
    return true;
}

}  // namespace autred
