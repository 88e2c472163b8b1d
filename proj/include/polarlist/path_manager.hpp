#pragma once

#include <cstdint>
#include <vector>

#include "polarlist/core.hpp"

namespace polarlist {

/// Shared-array bookkeeping for list decoding. Each of the L paths owns a
/// logical pair of arrays per layer (probabilities and bits); physically the
/// arrays live in per-layer banks of L slots and paths reference slots
/// through an index table, so cloning a path is O(m) and array contents are
/// copied only when a shared slot is about to be touched.
///
/// The public operations mirror the low-level routines of the list decoder:
/// assign_initial_path, clone_path, kill_path, and the array getters. Calling
/// them out of contract (inactive path, double init, pool exhaustion) throws
/// std::logic_error; check_invariants() verifies the full bookkeeping state
/// and is what the randomized call-sequence tests lean on.
template <class R>
class PathManagerT {
  public:
    PathManagerT(unsigned m, std::size_t list_size) : m_(m), L_(list_size) {
        if (list_size < 1) throw std::invalid_argument("PathManager: list size must be >= 1");
        if (m < 1 || m > 30) throw std::invalid_argument("PathManager: m must be in [1, 30]");

        bank_p_.resize(m_ + 1);
        bank_c_.resize(m_ + 1);
        path_to_slot_.assign(m_ + 1, std::vector<std::size_t>(L_, 0));
        ref_count_.assign(m_ + 1, std::vector<std::uint32_t>(L_, 0));
        inactive_slots_.resize(m_ + 1);
        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            const std::size_t cells = layer_cells(lambda);
            bank_p_[lambda].assign(L_, std::vector<ProbPairT<R>>(cells));
            bank_c_[lambda].assign(L_, std::vector<BitPair>(cells));
            inactive_slots_[lambda].reserve(L_);
            for (std::size_t s = 0; s < L_; ++s) inactive_slots_[lambda].push_back(s);
        }
        active_.assign(L_, 0);
        inactive_paths_.reserve(L_);
        for (std::size_t ell = 0; ell < L_; ++ell) inactive_paths_.push_back(ell);
    }

    unsigned m() const { return m_; }
    std::size_t list_size() const { return L_; }
    std::size_t layer_cells(unsigned lambda) const { return std::size_t{1} << (m_ - lambda); }

    bool path_active(std::size_t ell) const { return ell < L_ && active_[ell] != 0; }
    std::size_t active_count() const { return L_ - inactive_paths_.size(); }

    std::size_t assign_initial_path() {
        if (active_count() != 0)
            throw std::logic_error("assign_initial_path: paths already assigned");
        const std::size_t ell = pop_path();
        active_[ell] = 1;
        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            const std::size_t s = pop_slot(lambda);
            path_to_slot_[lambda][ell] = s;
            ref_count_[lambda][s] = 1;
        }
        return ell;
    }

    std::size_t clone_path(std::size_t ell) {
        require_active(ell, "clone_path");
        if (inactive_paths_.empty()) throw std::logic_error("clone_path: all paths in use");
        const std::size_t ell2 = pop_path();
        active_[ell2] = 1;
        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            const std::size_t s = path_to_slot_[lambda][ell];
            path_to_slot_[lambda][ell2] = s;
            ++ref_count_[lambda][s];
        }
        return ell2;
    }

    void kill_path(std::size_t ell) {
        require_active(ell, "kill_path");
        active_[ell] = 0;
        push_path(ell);
        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            const std::size_t s = path_to_slot_[lambda][ell];
            if (ref_count_[lambda][s] == 0)
                throw std::logic_error("kill_path: reference count underflow");
            if (--ref_count_[lambda][s] == 0) push_slot(lambda, s);
        }
    }

    /// Private (copy-if-shared) access. A slot holds one probability array
    /// and one bit array; both move together on a copy so the pair can never
    /// go out of sync for the path that keeps the old slot.
    ProbPairT<R>* get_array_p(unsigned lambda, std::size_t ell) {
        return bank_p_[lambda][privatize(lambda, ell, "get_array_p")].data();
    }

    BitPair* get_array_c(unsigned lambda, std::size_t ell) {
        return bank_c_[lambda][privatize(lambda, ell, "get_array_c")].data();
    }

    /// Read-only access without privatization; safe because any writer goes
    /// through the getters above and therefore never mutates a shared slot.
    const ProbPairT<R>* peek_array_p(unsigned lambda, std::size_t ell) const {
        require_layer(lambda);
        require_active(ell, "peek_array_p");
        return bank_p_[lambda][path_to_slot_[lambda][ell]].data();
    }

    const BitPair* peek_array_c(unsigned lambda, std::size_t ell) const {
        require_layer(lambda);
        require_active(ell, "peek_array_c");
        return bank_c_[lambda][path_to_slot_[lambda][ell]].data();
    }

    /// ProbPair + BitPair cells copied so far by shared-slot privatization.
    std::uint64_t copied_cells() const { return copied_cells_; }
    void reset_copied_cells() { copied_cells_ = 0; }

    /// Allocated pair cells across all banks: L * (2^(m+1) - 1) per bank.
    std::size_t prob_cells_allocated() const { return L_ * ((std::size_t{2} << m_) - 1); }
    std::size_t bit_cells_allocated() const { return prob_cells_allocated(); }

    /// Full state audit; throws std::logic_error naming the violated rule.
    void check_invariants() const {
        if (inactive_paths_.size() > L_) fail("path stack exceeds capacity");
        std::vector<std::uint8_t> on_stack(L_, 0);
        for (std::size_t ell : inactive_paths_) {
            if (ell >= L_) fail("path stack holds an out-of-range index");
            if (on_stack[ell]) fail("path stack holds a duplicate index");
            on_stack[ell] = 1;
        }
        std::size_t actives = 0;
        for (std::size_t ell = 0; ell < L_; ++ell) {
            if (active_[ell] && on_stack[ell]) fail("active path present in the inactive stack");
            if (!active_[ell] && !on_stack[ell]) fail("inactive path missing from the stack");
            actives += active_[ell] ? 1 : 0;
        }
        if (actives != active_count()) fail("active count out of sync with the stack");

        for (unsigned lambda = 0; lambda <= m_; ++lambda) {
            if (inactive_slots_[lambda].size() > L_) fail("slot stack exceeds capacity");
            std::vector<std::uint8_t> slot_on_stack(L_, 0);
            for (std::size_t s : inactive_slots_[lambda]) {
                if (s >= L_) fail("slot stack holds an out-of-range slot");
                if (slot_on_stack[s]) fail("slot stack holds a duplicate slot");
                slot_on_stack[s] = 1;
            }
            std::vector<std::uint32_t> expected(L_, 0);
            for (std::size_t ell = 0; ell < L_; ++ell)
                if (active_[ell]) ++expected[path_to_slot_[lambda][ell]];
            for (std::size_t s = 0; s < L_; ++s) {
                if (ref_count_[lambda][s] != expected[s])
                    fail("reference count does not match the active paths using the slot");
                if ((ref_count_[lambda][s] == 0) != (slot_on_stack[s] != 0))
                    fail("zero reference count must coincide with stack membership");
            }
        }
    }

  private:
    // Ensures the slot backing (lambda, ell) is referenced only by ell,
    // copying both arrays into a fresh slot when it is shared; returns the
    // slot that now privately backs the path at this layer.
    std::size_t privatize(unsigned lambda, std::size_t ell, const char* who) {
        require_layer(lambda);
        require_active(ell, who);
        const std::size_t s = path_to_slot_[lambda][ell];
        if (ref_count_[lambda][s] <= 1) return s;
        const std::size_t fresh = pop_slot(lambda);
        bank_p_[lambda][fresh] = bank_p_[lambda][s];
        bank_c_[lambda][fresh] = bank_c_[lambda][s];
        copied_cells_ += 2 * layer_cells(lambda);
        --ref_count_[lambda][s];
        ref_count_[lambda][fresh] = 1;
        path_to_slot_[lambda][ell] = fresh;
        return fresh;
    }

    void require_active(std::size_t ell, const char* who) const {
        if (ell >= L_ || !active_[ell])
            throw std::logic_error(std::string(who) + ": path " + std::to_string(ell) +
                                   " is not active");
    }

    void require_layer(unsigned lambda) const {
        if (lambda > m_) throw std::logic_error("layer index exceeds m");
    }

    [[noreturn]] static void fail(const char* what) {
        throw std::logic_error(std::string("PathManager invariant violated: ") + what);
    }

    std::size_t pop_path() {
        if (inactive_paths_.empty()) throw std::logic_error("path stack underflow");
        const std::size_t ell = inactive_paths_.back();
        inactive_paths_.pop_back();
        return ell;
    }

    void push_path(std::size_t ell) {
        if (inactive_paths_.size() >= L_) throw std::logic_error("path stack overflow");
        inactive_paths_.push_back(ell);
    }

    std::size_t pop_slot(unsigned lambda) {
        if (inactive_slots_[lambda].empty())
            throw std::logic_error("slot pool exhausted at layer " + std::to_string(lambda));
        const std::size_t s = inactive_slots_[lambda].back();
        inactive_slots_[lambda].pop_back();
        return s;
    }

    void push_slot(unsigned lambda, std::size_t s) {
        if (inactive_slots_[lambda].size() >= L_) throw std::logic_error("slot stack overflow");
        inactive_slots_[lambda].push_back(s);
    }

    unsigned m_;
    std::size_t L_;
    std::vector<std::size_t> inactive_paths_;
    std::vector<std::uint8_t> active_;
    std::vector<std::vector<std::vector<ProbPairT<R>>>> bank_p_;
    std::vector<std::vector<std::vector<BitPair>>> bank_c_;
    std::vector<std::vector<std::size_t>> path_to_slot_;
    std::vector<std::vector<std::size_t>> inactive_slots_;
    std::vector<std::vector<std::uint32_t>> ref_count_;
    std::uint64_t copied_cells_ = 0;
};

using PathManager = PathManagerT<double>;

}  // namespace polarlist
