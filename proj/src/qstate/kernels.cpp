#include "rio/kernels.hpp"

#include <algorithm>
#include <vector>

#include <omp.h>

namespace rio::kernels {

namespace {

void check_shape(std::span<Complex> amps, const Matrix& op, std::span<const unsigned> bits) {
    const std::size_t k = bits.size();
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != (std::size_t{1} << k)) {
        throw std::invalid_argument("operator is not 2^k x 2^k for k = " + std::to_string(k));
    }
    for (unsigned b : bits) {
        if ((std::size_t{1} << b) >= amps.size()) {
            throw std::invalid_argument("target bit outside the register");
        }
    }
}

// Offset of each operator column inside a group, target 0 = MSB of the column.
std::vector<std::size_t> column_offsets(std::span<const unsigned> bits) {
    const std::size_t k = bits.size();
    std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
    for (std::size_t c = 0; c < offsets.size(); ++c) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((c >> (k - 1 - t)) & 1U) offsets[c] |= std::size_t{1} << bits[t];
        }
    }
    return offsets;
}

}  // namespace

void apply_reference(std::span<Complex> amps, const Matrix& op, std::span<const unsigned> bits) {
    check_shape(amps, op, bits);
    const std::size_t k = bits.size();
    std::size_t mask = 0;
    for (unsigned b : bits) mask |= std::size_t{1} << b;

    std::vector<Complex> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::size_t row = 0;
        for (std::size_t t = 0; t < k; ++t) row = (row << 1) | ((i >> bits[t]) & 1U);
        Complex acc = 0.0;
        for (std::size_t c = 0; c < (std::size_t{1} << k); ++c) {
            std::size_t j = i & ~mask;
            for (std::size_t t = 0; t < k; ++t) {
                if ((c >> (k - 1 - t)) & 1U) j |= std::size_t{1} << bits[t];
            }
            acc += op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) * amps[j];
        }
        out[i] = acc;
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

namespace {

void apply_one_qubit(std::span<Complex> amps, const Matrix& op, unsigned bit) {
    const std::size_t stride = std::size_t{1} << bit;
    const auto blocks = static_cast<std::ptrdiff_t>(amps.size() / (2 * stride));
    const Complex m00 = op(0, 0), m01 = op(0, 1), m10 = op(1, 0), m11 = op(1, 1);
    Complex* a = amps.data();
    const auto mul = [](Complex m, Complex v) {
        return Complex(m.real() * v.real() - m.imag() * v.imag(),
                       m.real() * v.imag() + m.imag() * v.real());
    };
#pragma omp parallel for schedule(static) if (amps.size() / 2 >= kParallelThreshold)
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
        Complex* lo = a + static_cast<std::size_t>(blk) * 2 * stride;
        Complex* hi = lo + stride;
        for (std::size_t j = 0; j < stride; ++j) {
            const Complex u = lo[j], v = hi[j];
            lo[j] = mul(m00, u) + mul(m01, v);
            hi[j] = mul(m10, u) + mul(m11, v);
        }
    }
}

}  // namespace

void apply_parallel(std::span<Complex> amps, const Matrix& op, std::span<const unsigned> bits) {
    check_shape(amps, op, bits);
    if (bits.size() == 1) {
        apply_one_qubit(amps, op, bits[0]);
        return;
    }
    const std::size_t k = bits.size();
    const std::size_t block = std::size_t{1} << k;
    const auto offsets = column_offsets(bits);
    std::size_t mask = 0;
    for (unsigned b : bits) mask |= std::size_t{1} << b;

    // Row-wise nonzeros; protocol operators are mostly one entry per row.
    struct Entry {
        std::size_t col;
        double re, im;
    };
    std::vector<std::size_t> row_start(block + 1, 0);
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < block; ++r) {
        for (std::size_t c = 0; c < block; ++c) {
            const Complex v = op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (v != Complex(0.0, 0.0)) entries.push_back({c, v.real(), v.imag()});
        }
        row_start[r + 1] = entries.size();
    }

    Complex* a = amps.data();
    const std::size_t* off = offsets.data();
    const std::size_t* rs = row_start.data();
    const Entry* ent = entries.data();

    const auto apply_group = [&](std::size_t base, Complex* in) {
        bool any = false;
        for (std::size_t c = 0; c < block; ++c) {
            in[c] = a[base + off[c]];
            any = any || in[c] != Complex(0.0, 0.0);
        }
        // Post-selected branches are mostly zero; a zero group maps to zero.
        if (!any) return;
        for (std::size_t r = 0; r < block; ++r) {
            double re = 0.0, im = 0.0;
            for (std::size_t e = rs[r]; e < rs[r + 1]; ++e) {
                const double xr = in[ent[e].col].real(), xi = in[ent[e].col].imag();
                re += ent[e].re * xr - ent[e].im * xi;
                im += ent[e].re * xi + ent[e].im * xr;
            }
            a[base + off[r]] = Complex(re, im);
        }
    };

    if ((amps.size() >> k) < kParallelThreshold) {
        std::vector<Complex> in(block);
        // Walks every index with all target bits clear.
        for (std::size_t base = 0; base < amps.size(); base = ((base | mask) + 1) & ~mask) {
            apply_group(base, in.data());
        }
        return;
    }
    const auto n = static_cast<std::ptrdiff_t>(amps.size());
#pragma omp parallel
    {
        std::vector<Complex> in(block);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(i) & mask) continue;
            apply_group(static_cast<std::size_t>(i), in.data());
        }
    }
}

double project_reference(std::span<Complex> amps, unsigned bit, int outcome) {
    double kept = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (static_cast<int>((i >> bit) & 1U) != outcome) {
            amps[i] = 0.0;
        } else {
            kept += std::norm(amps[i]);
        }
    }
    return kept;
}

double project_parallel(std::span<Complex> amps, unsigned bit, int outcome) {
    const auto n = static_cast<std::ptrdiff_t>(amps.size());
    Complex* a = amps.data();
    const std::size_t flip = std::size_t{1} << bit;
    const std::size_t keep_set = outcome ? flip : 0;
    if (amps.size() < 2 * kParallelThreshold) {
        double kept = 0.0;
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if ((static_cast<std::size_t>(i) & flip) != keep_set) {
                a[i] = 0.0;
            } else {
                kept += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
            }
        }
        return kept;
    }
#pragma omp parallel for schedule(static) if (amps.size() >= 2 * kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if ((static_cast<std::size_t>(i) & flip) != keep_set) a[i] = 0.0;
    }
    // Serial sum so the branch weight does not depend on the thread count.
    double kept = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) kept += std::norm(a[i]);
    return kept;
}

}  // namespace rio::kernels
