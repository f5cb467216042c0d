#pragma once

// Deterministic seeded sample generator for the sample-based checks. Values
// are drawn from a small rational grid and rejected until they avoid the
// degenerate loci of the check at hand, so "generic" choices are
// reproducible from the seed alone.

#include "qplane/solver.hpp"
#include "qplane/weightmod.hpp"

#include <cstdint>
#include <stdexcept>

namespace qplane {

class SampleGen {
  public:
    explicit SampleGen(std::uint64_t seed) : state_(seed * 2 + 1) { next(); }

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_ >> 16;
    }
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational rational() {
        static const long dens[] = {1, 2, 3, 5, 7};
        return canonical(Rational(pick(-9, 9), dens[pick(0, 4)]));
    }
    Rational nonzero_rational() {
        for (int tries = 0; tries < 1000; ++tries) {
            Rational r = rational();
            if (r != 0) return r;
        }
        throw std::logic_error("sampling stalled");
    }

    Case3Sample case3() {
        for (int tries = 0; tries < 1000; ++tries) {
            Case3Sample s{rational(), rational(), rational(), rational(),
                          rational(), rational(), rational()};
            if (canonical(s.iprime + s.ntilde) == 0) continue;
            if (s.kprime == s.kdprime) continue;
            if (canonical(s.iprime + s.nprime) == 0) continue;
            return s;
        }
        throw std::logic_error("sampling stalled");
    }

    // A valid sample for the compatibility relation: k in the period
    // lattice, m off it, and the four anchored weights nonzero. Direction
    // forms alternate between the proof-local m2*d1 - m1*d2 and a random
    // nonzero form.
    CompatSample compat(const GenericSpec& spec, unsigned N, long box = 2) {
        unsigned order = spec.order;
        long n = static_cast<long>(N);
        for (int tries = 0; tries < 1000; ++tries) {
            ExpVec k{pick(-box, box) * n, pick(-box, box) * n};
            ExpVec m{pick(-box * n, box * n), pick(-box * n, box * n)};
            if (in_lattice(m, N)) continue;
            ExpVec base{pick(-box * n, box * n), pick(-box * n, box * n)};
            bool good = true;
            for (ExpVec idx : {base, base + m, base + k, base + m + k})
                if (weight_is_zero(weight_at(spec.alpha, idx))) good = false;
            if (!good) continue;
            DirectionForm d{Cyclotomic::from_int(order, m.m2),
                            -Cyclotomic::from_int(order, m.m1)};
            if (next() % 2) {
                d = DirectionForm{Cyclotomic::from_rational(order, rational()),
                                  Cyclotomic::from_rational(order, rational())};
                if (d.a1.is_zero() && d.a2.is_zero()) continue;
            }
            return CompatSample{d, k, m, base};
        }
        throw std::logic_error("sampling stalled");
    }

  private:
    std::uint64_t state_;
};

}  // namespace qplane
