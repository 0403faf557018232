#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"
#include "permutation.hpp"

namespace hamperturb {

enum class SlotState : std::uint8_t { unexposed, pending, exposed };

/// A permutation revealed in stages. Every slot starts unexposed. A slot can
/// be exposed directly (value revealed), or two slots can first be exposed as
/// an unordered value set (both become pending) and later resolved to a
/// definite order.
///
/// In random mode the full table is sampled up front from the caller's
/// stream, and resolving a pending pair flips a fair coin that may swap the
/// two hidden values. The order handed out is therefore uniform over the two
/// assignments regardless of how the table was inspected in between. In
/// fixed mode the table is given and order resolution just reads it.
///
/// exposed_count() counts slots that are pending or exposed; it is the
/// budget figure to check against an exposure cap before materialize().
class LazyPermutation {
public:
    static LazyPermutation random(int n, Rng& rng) {
        Permutation p = sample_uniform(n, rng);
        LazyPermutation lp(p.images(), true);
        lp.coin_rng_ = Rng(rng.next());
        return lp;
    }

    static LazyPermutation fixed(const Permutation& p) {
        return LazyPermutation(p.images(), false);
    }

    int size() const { return static_cast<int>(hidden_.size()); }
    bool is_lazy() const { return lazy_; }
    SlotState state(int i) const { return state_[check(i)]; }
    int exposed_count() const { return exposed_count_; }

    bool fully_exposed() const {
        for (SlotState s : state_)
            if (s != SlotState::exposed) return false;
        return true;
    }

    /// Reveals one slot. Idempotent on exposed slots; a pending slot must be
    /// resolved through its pair instead.
    int expose_image(int i) {
        std::size_t ii = check(i);
        if (state_[ii] == SlotState::pending)
            throw std::logic_error("expose_image: slot is pending in a pair");
        if (state_[ii] == SlotState::unexposed) {
            state_[ii] = SlotState::exposed;
            ++exposed_count_;
        }
        return hidden_[ii];
    }

    /// Reveals the unordered value set of two unexposed slots; both become
    /// pending. Returns the values with the smaller first.
    std::pair<int, int> expose_pair_set(int i, int j) {
        std::size_t ii = check(i), jj = check(j);
        if (ii == jj) throw std::logic_error("expose_pair_set: identical slots");
        if (state_[ii] != SlotState::unexposed || state_[jj] != SlotState::unexposed)
            throw std::logic_error("expose_pair_set: slot already exposed or pending");
        state_[ii] = state_[jj] = SlotState::pending;
        partner_[ii] = j;
        partner_[jj] = i;
        exposed_count_ += 2;
        return std::minmax(hidden_[ii], hidden_[jj]);
    }

    bool pair_pending(int i, int j) const {
        std::size_t ii = check(i), jj = check(j);
        return state_[ii] == SlotState::pending && partner_[ii] == j &&
               state_[jj] == SlotState::pending && partner_[jj] == i;
    }

    /// Resolves a pending pair to a definite order. Returns the values in
    /// slot order: first the value at i, then the value at j.
    std::pair<int, int> expose_pair_order(int i, int j) {
        std::size_t ii = check(i), jj = check(j);
        if (!pair_pending(i, j))
            throw std::logic_error("expose_pair_order: slots are not a pending pair");
        if (lazy_ && coin_rng_.coin()) std::swap(hidden_[ii], hidden_[jj]);
        state_[ii] = state_[jj] = SlotState::exposed;
        partner_[ii] = partner_[jj] = -1;
        return {hidden_[ii], hidden_[jj]};
    }

    /// Reads the current underlying value without exposing the slot. This is
    /// for building candidate tables whose membership must not depend on the
    /// order within any pending pair; resolving such a pair later may still
    /// swap the two values.
    int peek_value(int i) const { return hidden_[check(i)]; }

    /// Resolves every pending pair (with its coin, in random mode) and
    /// exposes all remaining slots.
    void materialize() {
        for (int i = 0; i < size(); ++i) {
            std::size_t ii = static_cast<std::size_t>(i);
            if (state_[ii] == SlotState::pending && partner_[ii] > i)
                expose_pair_order(i, partner_[ii]);
        }
        for (std::size_t ii = 0; ii < hidden_.size(); ++ii)
            state_[ii] = SlotState::exposed;
        exposed_count_ = size();
    }

    /// The fully resolved permutation; call after materialize().
    Permutation to_permutation() const {
        if (!fully_exposed())
            throw std::logic_error("to_permutation: not fully exposed");
        return Permutation(hidden_);
    }

private:
    LazyPermutation(std::vector<int> hidden, bool lazy)
        : hidden_(std::move(hidden)),
          state_(hidden_.size(), SlotState::unexposed),
          partner_(hidden_.size(), -1),
          lazy_(lazy),
          coin_rng_(0) {}

    std::size_t check(int i) const {
        if (i < 0 || i >= size()) throw std::out_of_range("LazyPermutation: slot out of range");
        return static_cast<std::size_t>(i);
    }

    std::vector<int> hidden_;
    std::vector<SlotState> state_;
    std::vector<int> partner_;
    bool lazy_;
    Rng coin_rng_;
    int exposed_count_ = 0;
};

} // namespace hamperturb
