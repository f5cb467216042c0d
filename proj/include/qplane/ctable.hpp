#pragma once

// Structure-constant table c_{m,k} for coefficient-defined modules. Entries
// depend only on the residues of m and k mod N, and c_{m,k} = 0 whenever m
// lies in N*Z^2 (those monomials are central and act as scalars fixed to 0
// on these modules).

#include "qplane/algebra.hpp"

#include <map>
#include <utility>

namespace qplane {

class CTable {
  public:
    using Key = std::pair<ExpVec, ExpVec>;  // (residue m, residue k)

    explicit CTable(unsigned N) : order_(N) {}

    unsigned order() const { return order_; }

    Cyclotomic get(ExpVec m, ExpVec k) const {
        ExpVec rm = residue(m, order_);
        if (rm == ExpVec{0, 0}) return Cyclotomic::zero(order_);
        auto it = entries_.find({rm, residue(k, order_)});
        return it == entries_.end() ? Cyclotomic::zero(order_) : it->second;
    }

    void set(ExpVec m, ExpVec k, const Cyclotomic& c) {
        if (c.order() != order_) throw order_mismatch(order_, c.order());
        ExpVec rm = residue(m, order_);
        if (rm == ExpVec{0, 0}) {
            if (!c.is_zero())
                throw std::invalid_argument(
                    "c entries with first index in N*Z^2 must be zero");
            return;
        }
        Key key{rm, residue(k, order_)};
        if (c.is_zero())
            entries_.erase(key);
        else
            entries_[key] = c;
    }

    // Nonzero entries, keyed by normalized residues.
    const std::map<Key, Cyclotomic>& support() const { return entries_; }

    friend bool operator==(const CTable& a, const CTable& b) {
        return a.order_ == b.order_ && a.entries_ == b.entries_;
    }

  private:
    unsigned order_;
    std::map<Key, Cyclotomic> entries_;
};

}  // namespace qplane
