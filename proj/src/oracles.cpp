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

#include "hamsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hamsim::oracles {

double FixedPointFormat::max_magnitude() const {
    return std::ldexp(1.0, m);
}

void FixedPointFormat::validate() const {
    if (p < 0 || m < 0 || n < 0 || bits() > 60) {
        throw PreconditionError("fixed-point format needs p, m, n >= 0 and at most 60 bits");
    }
}

double FixedPointValue::magnitude(const FixedPointFormat &f) const {
    return std::ldexp(static_cast<double>(r_bits), -f.n);
}

double FixedPointValue::phase_turns(const FixedPointFormat &f) const {
    return std::ldexp(static_cast<double>(phi_bits), -f.p);
}

cplx FixedPointValue::decode(const FixedPointFormat &f) const {
    double r = magnitude(f);
    const uint64_t full = uint64_t{1} << f.p;
    uint64_t ph = phi_bits;
    if (ph == 0) {
        return {r, 0.0};
    }
    if (2 * ph == full) {
        return {-r, 0.0};
    }
    if (4 * ph == full) {
        return {0.0, r};
    }
    if (4 * ph == 3 * full) {
        return {0.0, -r};
    }
    if (2 * ph > full) {
        return std::conj(FixedPointValue{r_bits, full - ph}.decode(f));
    }
    double ang = 2 * M_PI * std::ldexp(static_cast<double>(ph), -f.p);
    return {r * std::cos(ang), r * std::sin(ang)};
}

cplx FixedPointValue::sqrt_decode(const FixedPointFormat &f) const {
    double s = std::sqrt(magnitude(f));
    const uint64_t full = uint64_t{1} << f.p;
    if (phi_bits == 0) {
        return {s, 0.0};
    }
    if (2 * phi_bits == full) {
        return {0.0, s};
    }
    double ang = M_PI * std::ldexp(static_cast<double>(phi_bits), -f.p);
    return {s * std::cos(ang), s * std::sin(ang)};
}

FixedPointValue FixedPointValue::conj(const FixedPointFormat &f) const {
    const uint64_t full = uint64_t{1} << f.p;
    return {r_bits, (full - phi_bits) & (full - 1)};
}

static uint64_t quantize_magnitude(double r, const FixedPointFormat &f) {
    double scaled = std::ldexp(r, f.n);
    uint64_t top = uint64_t{1} << (f.m + f.n);
    if (!(scaled <= static_cast<double>(top) + 0.5)) {
        std::ostringstream ss;
        ss << "magnitude " << r << " exceeds the fixed-point range 2^" << f.m;
        throw PreconditionError(ss.str());
    }
    return std::min<uint64_t>(top, static_cast<uint64_t>(std::llround(scaled)));
}

FixedPointValue encode(cplx z, const FixedPointFormat &f) {
    f.validate();
    FixedPointValue v;
    v.r_bits = quantize_magnitude(std::abs(z), f);
    if (v.r_bits == 0) {
        return v;
    }
    double turns = std::arg(z) / (2 * M_PI);
    if (turns < 0) {
        turns += 1;
    }
    const uint64_t full = uint64_t{1} << f.p;
    v.phi_bits = static_cast<uint64_t>(std::llround(std::ldexp(turns, f.p))) & (full - 1);
    return v;
}

FixedPointValue encode_real(double x, const FixedPointFormat &f) {
    f.validate();
    FixedPointValue v;
    v.r_bits = quantize_magnitude(std::abs(x), f);
    if (v.r_bits != 0 && x < 0) {
        if (f.p == 0) {
            throw PreconditionError("negative value needs at least one phase bit");
        }
        v.phi_bits = uint64_t{1} << (f.p - 1);
    }
    return v;
}

SparseHermitian::SparseHermitian(size_t dim, size_t sparsity, FixedPointFormat fmt)
    : d_(sparsity), fmt_(fmt), rows_(dim) {
    fmt.validate();
    if (dim == 0) {
        throw PreconditionError("empty dimension");
    }
}

SparseHermitian SparseHermitian::from_dense(const ComplexMatrix &h, FixedPointFormat fmt, size_t sparsity) {
    if (!h.is_square()) {
        throw PreconditionError("from_dense: non-square input");
    }
    SparseHermitian s(h.rows(), sparsity ? sparsity : h.rows(), fmt);
    for (size_t i = 0; i < h.rows(); i++) {
        s.set(i, i, encode_real(h(i, i).real(), fmt));
        for (size_t k = i + 1; k < h.cols(); k++) {
            s.set(i, k, encode(h(i, k), fmt));
        }
    }
    if (sparsity == 0) {
        s.d_ = std::max<size_t>(1, s.max_row_count());
    }
    s.validate();
    return s;
}

static void put(std::vector<SparseEntry> &row, size_t col, FixedPointValue v) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const SparseEntry &e, size_t c) {
        return e.col < c;
    });
    bool present = it != row.end() && it->col == col;
    if (v.is_zero()) {
        if (present) {
            row.erase(it);
        }
    } else if (present) {
        it->value = v;
    } else {
        row.insert(it, SparseEntry{col, v});
    }
}

void SparseHermitian::set(size_t i, size_t k, FixedPointValue v) {
    if (i >= dim() || k >= dim()) {
        throw PreconditionError("set: index out of range");
    }
    if (v.is_zero()) {
        v = FixedPointValue{};
    }
    if (i == k) {
        if (v.conj(fmt_) != v) {
            throw PreconditionError("set: diagonal entry must be real");
        }
        put(rows_[i], i, v);
        return;
    }
    put(rows_[i], k, v);
    put(rows_[k], i, v.is_zero() ? v : v.conj(fmt_));
}

FixedPointValue SparseHermitian::get(size_t i, size_t k) const {
    const auto &row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), k, [](const SparseEntry &e, size_t c) {
        return e.col < c;
    });
    if (it != row.end() && it->col == k) {
        return it->value;
    }
    return {};
}

size_t SparseHermitian::max_row_count() const {
    size_t m = 0;
    for (const auto &r : rows_) {
        m = std::max(m, r.size());
    }
    return m;
}

size_t SparseHermitian::nonzero_count() const {
    size_t c = 0;
    for (const auto &r : rows_) {
        c += r.size();
    }
    return c;
}

void SparseHermitian::validate() const {
    fmt_.validate();
    const uint64_t top = uint64_t{1} << (fmt_.m + fmt_.n);
    for (size_t i = 0; i < dim(); i++) {
        if (rows_[i].size() > d_) {
            std::ostringstream ss;
            ss << "row " << i << " holds " << rows_[i].size() << " nonzeros, sparsity bound is " << d_;
            throw PreconditionError(ss.str());
        }
        for (const auto &e : rows_[i]) {
            if (e.value.r_bits > top || e.value.phi_bits >> fmt_.p) {
                throw PreconditionError("entry exceeds fixed-point widths");
            }
            if (get(e.col, i) != e.value.conj(fmt_)) {
                std::ostringstream ss;
                ss << "entry (" << i << "," << e.col << ") lacks its conjugate partner";
                throw PreconditionError(ss.str());
            }
        }
    }
}

ComplexMatrix SparseHermitian::to_dense() const {
    ComplexMatrix h(dim(), dim());
    for (size_t i = 0; i < dim(); i++) {
        for (const auto &e : rows_[i]) {
            h(i, e.col) = e.value.decode(fmt_);
        }
    }
    return h;
}

double SparseHermitian::max_magnitude() const {
    double m = 0;
    for (const auto &r : rows_) {
        for (const auto &e : r) {
            m = std::max(m, e.value.magnitude(fmt_));
        }
    }
    return m;
}

void add_cost(CostVector &into, const CostVector &c, uint64_t times) {
    for (const auto &[k, v] : c) {
        into[k] += v * times;
    }
}

std::string names::sub_oracle(const std::string &label) {
    return "O_H[" + label + "]";
}

std::string names::encoding(const std::string &label) {
    return "enc[" + label + "]";
}

void QueryLedger::charge(const std::string &name, uint64_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    counts_[name] += count;
}

void QueryLedger::charge(const CostVector &c, uint64_t times) {
    std::lock_guard<std::mutex> lock(mu_);
    add_cost(counts_, c, times);
}

uint64_t QueryLedger::get(const std::string &name) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = counts_.find(name);
    return it == counts_.end() ? 0 : it->second;
}

CostVector QueryLedger::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return counts_;
}

OracleSet OracleSet::build(std::shared_ptr<const SparseHermitian> h, std::shared_ptr<QueryLedger> ledger) {
    if (!h || !ledger) {
        throw PreconditionError("build_oracles: null matrix or ledger");
    }
    h->validate();
    OracleSet o;
    o.h_ = std::move(h);
    o.ledger_ = std::move(ledger);
    return o;
}

CostVector OracleSet::value_cost() const {
    CostVector c{{names::O_H, 1}};
    if (windowed_) {
        c[names::sub_oracle(label_)] = 1;
    }
    return c;
}

FixedPointValue OracleSet::peek_value(size_t i, size_t k) const {
    if (i >= dim() || k >= dim()) {
        throw PreconditionError("value oracle: index out of range");
    }
    FixedPointValue v = h_->get(i, k);
    if (windowed_) {
        double r = v.magnitude(format());
        if (!(r > lo_ && r <= hi_)) {
            return {};
        }
    }
    return v;
}

FixedPointValue OracleSet::value(size_t i, size_t k) const {
    FixedPointValue v = peek_value(i, k);
    ledger_->charge(value_cost());
    return v;
}

size_t OracleSet::peek_position(size_t i, size_t l) const {
    if (i >= dim()) {
        throw PreconditionError("position oracle: row out of range");
    }
    if (l < 1 || l > sparsity()) {
        throw PreconditionError("position oracle: l must lie in 1..d");
    }
    const auto &row = h_->row(i);
    if (l <= row.size()) {
        return row[l - 1].col;
    }
    // Padding: the (l - count)-th smallest column without a nonzero in row i.
    size_t want = l - row.size();
    size_t idx = 0;
    for (size_t c = 0; c < dim(); c++) {
        while (idx < row.size() && row[idx].col < c) {
            idx++;
        }
        if (idx < row.size() && row[idx].col == c) {
            continue;
        }
        if (--want == 0) {
            return c;
        }
    }
    throw PreconditionError("position oracle: no padding column available");
}

size_t OracleSet::position(size_t i, size_t l) const {
    size_t c = peek_position(i, l);
    ledger_->charge(names::O_F, 1);
    return c;
}

OracleSet OracleSet::threshold(double lo, double hi, const std::string &label) const {
    if (!(lo >= 0 && lo < hi)) {
        std::ostringstream ss;
        ss << "threshold_suboracle: need 0 <= lo < hi, got (" << lo << ", " << hi << "]";
        throw PreconditionError(ss.str());
    }
    if (windowed_) {
        throw PreconditionError("threshold_suboracle: nested windows are not supported");
    }
    OracleSet o = *this;
    o.windowed_ = true;
    o.lo_ = lo;
    o.hi_ = hi;
    o.label_ = label;
    return o;
}

OracleSet threshold_suboracle(const OracleSet &o, double lo, double hi, const std::string &label) {
    return o.threshold(lo, hi, label);
}

ComplexMatrix OracleSet::materialize() const {
    ComplexMatrix m(dim(), dim());
    for (size_t i = 0; i < dim(); i++) {
        for (const auto &e : h_->row(i)) {
            m(i, e.col) = peek_value(i, e.col).decode(format());
        }
    }
    return m;
}

void write_instance(std::ostream &out, const SparseHermitian &h) {
    const auto &f = h.format();
    out << h.dim() << " " << h.sparsity() << " " << f.bits() << " " << f.p << " " << f.m << " " << f.n << " "
        << h.seed() << "\n";
    for (size_t i = 0; i < h.dim(); i++) {
        for (const auto &e : h.row(i)) {
            if (e.col >= i) {
                out << i << " " << e.col << " " << e.value.r_bits << " " << e.value.phi_bits << "\n";
            }
        }
    }
}

SparseHermitian read_instance(std::istream &in) {
    size_t n = 0, d = 0;
    int b = 0;
    FixedPointFormat f;
    uint64_t seed = 0;
    if (!(in >> n >> d >> b >> f.p >> f.m >> f.n >> seed)) {
        throw PreconditionError("instance file: malformed header");
    }
    if (b != f.bits()) {
        throw PreconditionError("instance file: b does not equal p+m+n+1");
    }
    SparseHermitian h(n, d, f);
    h.set_seed(seed);
    size_t r, c;
    FixedPointValue v;
    while (in >> r >> c >> v.r_bits >> v.phi_bits) {
        if (c < r) {
            throw PreconditionError("instance file: entry below the diagonal");
        }
        h.set(r, c, v);
    }
    if (!in.eof()) {
        throw PreconditionError("instance file: malformed entry line");
    }
    h.validate();
    return h;
}

void save_instance(const std::string &path, const SparseHermitian &h) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_instance(out, h);
}

SparseHermitian load_instance(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return read_instance(in);
}

std::string instance_metadata(const SparseHermitian &h, const std::string &generator) {
    auto nb = numerics::compute_norms(h.to_dense());
    const auto &f = h.format();
    nlohmann::ordered_json j;
    j["N"] = h.dim();
    j["d"] = h.sparsity();
    j["format"] = {{"b", f.bits()}, {"p", f.p}, {"m", f.m}, {"n", f.n}};
    j["seed"] = h.seed();
    j["generator"] = generator;
    j["nonzeros"] = h.nonzero_count();
    j["max_row_count"] = h.max_row_count();
    j["norms"] = {{"max_norm", nb.max_norm},
                  {"spectral", nb.spectral},
                  {"induced_one", nb.induced_one},
                  {"one_to_two", nb.one_to_two}};
    return j.dump(2) + "\n";
}

}  // namespace hamsim::oracles
