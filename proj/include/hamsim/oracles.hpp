// Copyright 2026 The hamsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMSIM_ORACLES_HPP
#define HAMSIM_ORACLES_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hamsim/numerics.hpp"

namespace hamsim::oracles {

using numerics::ComplexMatrix;

/// Bit widths of the complex fixed-point encoding: p phase bits, m+1 integer
/// bits and n fraction bits of magnitude.
struct FixedPointFormat {
    int p = 12;
    int m = 3;
    int n = 16;

    int bits() const {
        return p + m + n + 1;
    }
    /// Largest encodable magnitude, 2^m.
    double max_magnitude() const;
    void validate() const;
    bool operator==(const FixedPointFormat &) const = default;
};

/// z = r e^{2 pi i phi} with r = r_bits / 2^n and phi = phi_bits / 2^p.
struct FixedPointValue {
    uint64_t r_bits = 0;
    uint64_t phi_bits = 0;

    bool is_zero() const {
        return r_bits == 0;
    }
    double magnitude(const FixedPointFormat &f) const;
    double phase_turns(const FixedPointFormat &f) const;
    /// Exactly conjugate-symmetric: decode(conj(v)) == conj(decode(v)) bit for bit.
    cplx decode(const FixedPointFormat &f) const;
    /// Principal square root sqrt(r) e^{i pi phi}.
    cplx sqrt_decode(const FixedPointFormat &f) const;
    FixedPointValue conj(const FixedPointFormat &f) const;
    bool operator==(const FixedPointValue &) const = default;
};

/// Round-to-nearest encoding. Rejects |z| above 2^m.
FixedPointValue encode(cplx z, const FixedPointFormat &f);
/// Encoding of a real value with phase exactly 0 or 1/2.
FixedPointValue encode_real(double x, const FixedPointFormat &f);

struct SparseEntry {
    size_t col;
    FixedPointValue value;
    bool operator==(const SparseEntry &) const = default;
};

/// d-sparse Hermitian matrix stored row-wise with fixed-point entries.
class SparseHermitian {
   public:
    SparseHermitian() = default;
    SparseHermitian(size_t dim, size_t sparsity, FixedPointFormat fmt);

    /// Quantizes the upper triangle and mirrors its conjugate into the lower one.
    static SparseHermitian from_dense(const ComplexMatrix &h, FixedPointFormat fmt, size_t sparsity = 0);

    size_t dim() const {
        return rows_.size();
    }
    size_t sparsity() const {
        return d_;
    }
    const FixedPointFormat &format() const {
        return fmt_;
    }
    uint64_t seed() const {
        return seed_;
    }
    void set_seed(uint64_t s) {
        seed_ = s;
    }
    const std::vector<SparseEntry> &row(size_t i) const {
        return rows_.at(i);
    }

    /// Sets (i,k) and its conjugate partner (k,i). A zero value removes both.
    void set(size_t i, size_t k, FixedPointValue v);
    FixedPointValue get(size_t i, size_t k) const;
    size_t max_row_count() const;
    size_t nonzero_count() const;
    /// Throws on sparsity or bit-level Hermiticity violations.
    void validate() const;
    ComplexMatrix to_dense() const;
    double max_magnitude() const;

    bool operator==(const SparseHermitian &) const = default;

   private:
    size_t d_ = 0;
    FixedPointFormat fmt_;
    uint64_t seed_ = 0;
    std::vector<std::vector<SparseEntry>> rows_;
};

/// Per-application or accumulated counts keyed by oracle name.
using CostVector = std::map<std::string, uint64_t>;

void add_cost(CostVector &into, const CostVector &c, uint64_t times = 1);

namespace names {
inline const std::string O_H = "O_H";
inline const std::string O_F = "O_F";
inline const std::string U_COL = "U_col";
inline const std::string U_ROW = "U_row";
inline const std::string U_B = "U_B";
inline const std::string EXP_A = "exp_A";
std::string sub_oracle(const std::string &label);
std::string encoding(const std::string &label);
}  // namespace names

/// Monotone query counters; safe for concurrent increments.
class QueryLedger {
   public:
    void charge(const std::string &name, uint64_t count = 1);
    void charge(const CostVector &c, uint64_t times = 1);
    uint64_t get(const std::string &name) const;
    CostVector snapshot() const;

   private:
    mutable std::mutex mu_;
    CostVector counts_;
};

/// Value oracle O_H and position oracle O_F over one SparseHermitian, with an
/// optional magnitude window (lo, hi] applied to values.
class OracleSet {
   public:
    static OracleSet build(std::shared_ptr<const SparseHermitian> h,
                           std::shared_ptr<QueryLedger> ledger = std::make_shared<QueryLedger>());

    /// Charged value query; 0-based indices.
    FixedPointValue value(size_t i, size_t k) const;
    /// Charged position query: column of the l-th (1-based) nonzero of row i.
    size_t position(size_t i, size_t l) const;

    /// Free inspection counterparts.
    FixedPointValue peek_value(size_t i, size_t k) const;
    size_t peek_position(size_t i, size_t l) const;

    /// Window sub-oracle. Each query charges one base O_H plus one named query.
    OracleSet threshold(double lo, double hi, const std::string &label) const;

    ComplexMatrix materialize() const;

    size_t dim() const {
        return h_->dim();
    }
    size_t sparsity() const {
        return h_->sparsity();
    }
    const FixedPointFormat &format() const {
        return h_->format();
    }
    const SparseHermitian &matrix() const {
        return *h_;
    }
    QueryLedger &ledger() const {
        return *ledger_;
    }
    std::shared_ptr<QueryLedger> ledger_ptr() const {
        return ledger_;
    }
    bool windowed() const {
        return windowed_;
    }
    double lo() const {
        return lo_;
    }
    double hi() const {
        return hi_;
    }
    /// Counter charged alongside O_H for windowed oracles; empty otherwise.
    const std::string &label() const {
        return label_;
    }
    /// Base-oracle cost of one value query.
    CostVector value_cost() const;

   private:
    std::shared_ptr<const SparseHermitian> h_;
    std::shared_ptr<QueryLedger> ledger_;
    bool windowed_ = false;
    double lo_ = 0;
    double hi_ = 0;
    std::string label_;
};

OracleSet threshold_suboracle(const OracleSet &o, double lo, double hi, const std::string &label = "sub");

/// Instance file: header "N d b p m n seed", then "row col r_bits phi_bits"
/// for each nonzero on or above the diagonal.
void write_instance(std::ostream &out, const SparseHermitian &h);
SparseHermitian read_instance(std::istream &in);
void save_instance(const std::string &path, const SparseHermitian &h);
SparseHermitian load_instance(const std::string &path);
/// JSON metadata document: format, sparsity, norms, seed, generator.
std::string instance_metadata(const SparseHermitian &h, const std::string &generator);

}  // namespace hamsim::oracles

#endif
