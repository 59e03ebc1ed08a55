// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "kernels_internal.hpp"

namespace wlab::kernels::detail {
namespace {

constexpr double kGaussLo = 0.21132486540518711775;
constexpr double kGaussHi = 0.78867513459481288225;

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

EdgeMoments polygon_moments_avx2(const double* x, const double* y, std::size_t n) {
    __m256d twice_area = _mm256_setzero_pd();
    __m256d perimeter = _mm256_setzero_pd();
    __m256d momentum = _mm256_setzero_pd();
    __m256d first_x = _mm256_setzero_pd();
    __m256d first_y = _mm256_setzero_pd();
    const __m256d glo = _mm256_set1_pd(kGaussLo);
    const __m256d ghi = _mm256_set1_pd(kGaussHi);
    const __m256d half = _mm256_set1_pd(0.5);

    std::size_t i = 0;
    for (; i + 4 < n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        const __m256d xj = _mm256_loadu_pd(x + i + 1);
        const __m256d yj = _mm256_loadu_pd(y + i + 1);
        const __m256d ex = _mm256_sub_pd(xj, xi);
        const __m256d ey = _mm256_sub_pd(yj, yi);
        const __m256d len = _mm256_sqrt_pd(_mm256_fmadd_pd(ex, ex, _mm256_mul_pd(ey, ey)));
        twice_area = _mm256_add_pd(twice_area, _mm256_fmsub_pd(xi, yj, _mm256_mul_pd(xj, yi)));
        perimeter = _mm256_add_pd(perimeter, len);
        const __m256d gx0 = _mm256_fmadd_pd(glo, ex, xi);
        const __m256d gy0 = _mm256_fmadd_pd(glo, ey, yi);
        const __m256d gx1 = _mm256_fmadd_pd(ghi, ex, xi);
        const __m256d gy1 = _mm256_fmadd_pd(ghi, ey, yi);
        __m256d q = _mm256_mul_pd(gx0, gx0);
        q = _mm256_fmadd_pd(gy0, gy0, q);
        q = _mm256_fmadd_pd(gx1, gx1, q);
        q = _mm256_fmadd_pd(gy1, gy1, q);
        const __m256d hl = _mm256_mul_pd(half, len);
        momentum = _mm256_fmadd_pd(hl, q, momentum);
        first_x = _mm256_fmadd_pd(hl, _mm256_add_pd(xi, xj), first_x);
        first_y = _mm256_fmadd_pd(hl, _mm256_add_pd(yi, yj), first_y);
    }

    EdgeMoments m{hsum(twice_area), hsum(perimeter), hsum(momentum), hsum(first_x), hsum(first_y)};
    for (; i < n; ++i) {
        const std::size_t j = (i + 1 == n) ? 0 : i + 1;
        const double ex = x[j] - x[i];
        const double ey = y[j] - y[i];
        const double len = std::sqrt(ex * ex + ey * ey);
        const double gx0 = x[i] + kGaussLo * ex, gy0 = y[i] + kGaussLo * ey;
        const double gx1 = x[i] + kGaussHi * ex, gy1 = y[i] + kGaussHi * ey;
        m.twice_area += x[i] * y[j] - x[j] * y[i];
        m.perimeter += len;
        m.momentum += 0.5 * len * (gx0 * gx0 + gy0 * gy0 + gx1 * gx1 + gy1 * gy1);
        m.first_x += 0.5 * len * (x[i] + x[j]);
        m.first_y += 0.5 * len * (y[i] + y[j]);
    }
    return m;
}

TriangleMoments triangle_moments_avx2(const TriangleArrays& t) {
    __m256d six_volume = _mm256_setzero_pd();
    __m256d area_acc = _mm256_setzero_pd();
    __m256d momentum = _mm256_setzero_pd();
    __m256d fx = _mm256_setzero_pd();
    __m256d fy = _mm256_setzero_pd();
    __m256d fz = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d third = _mm256_set1_pd(1.0 / 3.0);

    std::size_t i = 0;
    for (; i + 4 <= t.count; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(t.x0 + i), y0 = _mm256_loadu_pd(t.y0 + i),
                      z0 = _mm256_loadu_pd(t.z0 + i);
        const __m256d x1 = _mm256_loadu_pd(t.x1 + i), y1 = _mm256_loadu_pd(t.y1 + i),
                      z1 = _mm256_loadu_pd(t.z1 + i);
        const __m256d x2 = _mm256_loadu_pd(t.x2 + i), y2 = _mm256_loadu_pd(t.y2 + i),
                      z2 = _mm256_loadu_pd(t.z2 + i);
        const __m256d ax = _mm256_sub_pd(x1, x0), ay = _mm256_sub_pd(y1, y0),
                      az = _mm256_sub_pd(z1, z0);
        const __m256d bx = _mm256_sub_pd(x2, x0), by = _mm256_sub_pd(y2, y0),
                      bz = _mm256_sub_pd(z2, z0);
        const __m256d cx = _mm256_fmsub_pd(ay, bz, _mm256_mul_pd(az, by));
        const __m256d cy = _mm256_fmsub_pd(az, bx, _mm256_mul_pd(ax, bz));
        const __m256d cz = _mm256_fmsub_pd(ax, by, _mm256_mul_pd(ay, bx));
        __m256d c2 = _mm256_mul_pd(cx, cx);
        c2 = _mm256_fmadd_pd(cy, cy, c2);
        c2 = _mm256_fmadd_pd(cz, cz, c2);
        const __m256d area = _mm256_mul_pd(half, _mm256_sqrt_pd(c2));
        __m256d v = _mm256_mul_pd(x0, cx);
        v = _mm256_fmadd_pd(y0, cy, v);
        v = _mm256_fmadd_pd(z0, cz, v);
        six_volume = _mm256_add_pd(six_volume, v);
        area_acc = _mm256_add_pd(area_acc, area);

        const __m256d mx01 = _mm256_mul_pd(half, _mm256_add_pd(x0, x1));
        const __m256d my01 = _mm256_mul_pd(half, _mm256_add_pd(y0, y1));
        const __m256d mz01 = _mm256_mul_pd(half, _mm256_add_pd(z0, z1));
        const __m256d mx12 = _mm256_mul_pd(half, _mm256_add_pd(x1, x2));
        const __m256d my12 = _mm256_mul_pd(half, _mm256_add_pd(y1, y2));
        const __m256d mz12 = _mm256_mul_pd(half, _mm256_add_pd(z1, z2));
        const __m256d mx20 = _mm256_mul_pd(half, _mm256_add_pd(x2, x0));
        const __m256d my20 = _mm256_mul_pd(half, _mm256_add_pd(y2, y0));
        const __m256d mz20 = _mm256_mul_pd(half, _mm256_add_pd(z2, z0));
        __m256d q = _mm256_mul_pd(mx01, mx01);
        q = _mm256_fmadd_pd(my01, my01, q);
        q = _mm256_fmadd_pd(mz01, mz01, q);
        q = _mm256_fmadd_pd(mx12, mx12, q);
        q = _mm256_fmadd_pd(my12, my12, q);
        q = _mm256_fmadd_pd(mz12, mz12, q);
        q = _mm256_fmadd_pd(mx20, mx20, q);
        q = _mm256_fmadd_pd(my20, my20, q);
        q = _mm256_fmadd_pd(mz20, mz20, q);
        const __m256d w = _mm256_mul_pd(area, third);
        momentum = _mm256_fmadd_pd(w, q, momentum);
        fx = _mm256_fmadd_pd(w, _mm256_add_pd(_mm256_add_pd(x0, x1), x2), fx);
        fy = _mm256_fmadd_pd(w, _mm256_add_pd(_mm256_add_pd(y0, y1), y2), fy);
        fz = _mm256_fmadd_pd(w, _mm256_add_pd(_mm256_add_pd(z0, z1), z2), fz);
    }

    TriangleMoments m{hsum(six_volume), hsum(area_acc), hsum(momentum),
                      hsum(fx),         hsum(fy),       hsum(fz)};
    if (i < t.count) {
        TriangleArrays rest{t.x0 + i, t.y0 + i, t.z0 + i, t.x1 + i, t.y1 + i, t.z1 + i,
                            t.x2 + i, t.y2 + i, t.z2 + i, t.count - i};
        const TriangleMoments r = scalar().triangle_moments(rest);
        m.six_volume += r.six_volume;
        m.area += r.area;
        m.momentum += r.momentum;
        m.first_x += r.first_x;
        m.first_y += r.first_y;
        m.first_z += r.first_z;
    }
    return m;
}

void fourier_synthesis_avx2(double a0, const double* a, const double* b, std::size_t modes,
                            const double* cos_table, const double* sin_table, std::size_t n,
                            double* h, double* dh, double* d2h) {
    if (n < 4) {
        scalar().fourier_synthesis(a0, a, b, modes, cos_table, sin_table, n, h, dh, d2h);
        return;
    }
    const __m256d base = _mm256_set1_pd(a0);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n; j += 4) {
        _mm256_storeu_pd(h + j, base);
        _mm256_storeu_pd(dh + j, zero);
        _mm256_storeu_pd(d2h + j, zero);
    }
    const __m128i mask = _mm_set1_epi32(static_cast<int>(n - 1));
    for (std::size_t k = 1; k <= modes; ++k) {
        const double ak = a[k - 1];
        const double bk = b[k - 1];
        if (ak == 0.0 && bk == 0.0) continue;
        const double kd = static_cast<double>(k);
        const __m256d va = _mm256_set1_pd(ak);
        const __m256d vb = _mm256_set1_pd(bk);
        const __m256d vk = _mm256_set1_pd(kd);
        const __m256d vk2 = _mm256_set1_pd(kd * kd);
        const auto ku = static_cast<std::uint32_t>(k);
        __m128i idx = _mm_setr_epi32(0, static_cast<int>(ku), static_cast<int>(2 * ku),
                                     static_cast<int>(3 * ku));
        const __m128i step = _mm_set1_epi32(static_cast<int>(4 * ku));
        for (std::size_t j = 0; j < n; j += 4) {
            const __m128i wrapped = _mm_and_si128(idx, mask);
            const __m256d c = _mm256_i32gather_pd(cos_table, wrapped, 8);
            const __m256d s = _mm256_i32gather_pd(sin_table, wrapped, 8);
            const __m256d v = _mm256_fmadd_pd(va, c, _mm256_mul_pd(vb, s));
            const __m256d w = _mm256_fmsub_pd(vb, c, _mm256_mul_pd(va, s));
            _mm256_storeu_pd(h + j, _mm256_add_pd(_mm256_loadu_pd(h + j), v));
            _mm256_storeu_pd(dh + j, _mm256_fmadd_pd(vk, w, _mm256_loadu_pd(dh + j)));
            _mm256_storeu_pd(d2h + j, _mm256_fnmadd_pd(vk2, v, _mm256_loadu_pd(d2h + j)));
            idx = _mm_add_epi32(wrapped, step);
        }
    }
}

SupportMoments support_moments_avx2(const double* h, const double* d2h, std::size_t n) {
    __m256d sh = _mm256_setzero_pd();
    __m256d sa = _mm256_setzero_pd();
    __m256d sm = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d vh = _mm256_loadu_pd(h + j);
        const __m256d vd = _mm256_loadu_pd(d2h + j);
        const __m256d hh = _mm256_mul_pd(vh, vh);
        sh = _mm256_add_pd(sh, vh);
        sa = _mm256_add_pd(sa, _mm256_fmadd_pd(vh, vd, hh));
        sm = _mm256_add_pd(sm, _mm256_mul_pd(hh, _mm256_fmadd_pd(half, vd, vh)));
    }
    SupportMoments m{hsum(sh), hsum(sa), hsum(sm)};
    for (; j < n; ++j) {
        const double hh = h[j] * h[j];
        m.sum_h += h[j];
        m.sum_area += hh + h[j] * d2h[j];
        m.sum_momentum += hh * h[j] + 0.5 * hh * d2h[j];
    }
    return m;
}

double dot3_avx2(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{
        "avx2",
        polygon_moments_avx2,
        triangle_moments_avx2,
        fourier_synthesis_avx2,
        support_moments_avx2,
        dot3_avx2,
    };
    return table;
}

}  // namespace wlab::kernels::detail
