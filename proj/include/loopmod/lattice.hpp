#pragma once

#include <cstdint>
#include <vector>

namespace loopmod {

using IntVec = std::vector<std::int64_t>;

// Subgroup of Z^n stored as a lower-triangular row basis in permuted
// coordinates: position j holds original axis ordering[j]. Row j is zero past
// position j, diagonal entries are positive (zero marks a missing pivot) and
// entries below a pivot lie in [0, pivot).
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(int n);

    static Lattice from_generators(int n, const std::vector<IntVec>& generators, std::vector<int> ordering = {});
    static Lattice full(int n, std::vector<int> ordering = {});
    static Lattice diagonal(const IntVec& periods, std::vector<int> ordering = {});

    int dim() const { return n_; }
    const std::vector<int>& ordering() const { return ordering_; }
    // Rows in permuted coordinates.
    const std::vector<IntVec>& rows() const { return rows_; }
    // Rows in original coordinates, zero rows dropped.
    std::vector<IntVec> basis() const;
    IntVec pivots() const;
    bool full_rank() const;
    std::int64_t index() const;

    bool contains(const IntVec& m) const;
    // Canonical representative of m + L (original coordinates).
    IntVec reduce(const IntVec& m) const;
    // Smallest t in [1, bound] with t*e_axis in L.
    std::int64_t axis_period(int axis, std::int64_t bound) const;
    IntVec axis_periods() const;
    // Smallest representative of each coset inside prod [0, r_i), comparing the
    // last axis first.
    std::vector<IntVec> coset_reps() const;

    Lattice reordered(std::vector<int> ordering) const;
    void insert(const IntVec& m);

    bool operator==(const Lattice& o) const;
    bool operator!=(const Lattice& o) const { return !(*this == o); }

private:
    IntVec to_perm(const IntVec& m) const;
    IntVec from_perm(const IntVec& w) const;
    void insert_perm(IntVec v);
    void normalize();

    int n_ = 0;
    std::vector<int> ordering_;
    std::vector<IntVec> rows_;
};

// Iterates prod [lo_i, hi_i] in lexicographic order (first axis slowest).
std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi);
std::vector<IntVec> centered_box(int n, std::int64_t radius);

} // namespace loopmod
