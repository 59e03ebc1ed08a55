#include <cmath>

#include "kernels_internal.hpp"

namespace wlab::kernels {
namespace {

// 2-point Gauss-Legendre on [0, 1]
constexpr double kGaussLo = 0.21132486540518711775;
constexpr double kGaussHi = 0.78867513459481288225;

EdgeMoments polygon_moments_scalar(const double* x, const double* y, std::size_t n) {
    EdgeMoments m;
    for (std::size_t i = 0; i < n; ++i) {
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

TriangleMoments triangle_moments_scalar(const TriangleArrays& t) {
    TriangleMoments m;
    for (std::size_t i = 0; i < t.count; ++i) {
        const double ax = t.x1[i] - t.x0[i], ay = t.y1[i] - t.y0[i], az = t.z1[i] - t.z0[i];
        const double bx = t.x2[i] - t.x0[i], by = t.y2[i] - t.y0[i], bz = t.z2[i] - t.z0[i];
        const double cx = ay * bz - az * by;
        const double cy = az * bx - ax * bz;
        const double cz = ax * by - ay * bx;
        const double area = 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
        // p0 . (p1 x p2) = p0 . ((p1 - p0) x (p2 - p0))
        m.six_volume += t.x0[i] * cx + t.y0[i] * cy + t.z0[i] * cz;
        m.area += area;
        const double mx01 = 0.5 * (t.x0[i] + t.x1[i]), my01 = 0.5 * (t.y0[i] + t.y1[i]),
                     mz01 = 0.5 * (t.z0[i] + t.z1[i]);
        const double mx12 = 0.5 * (t.x1[i] + t.x2[i]), my12 = 0.5 * (t.y1[i] + t.y2[i]),
                     mz12 = 0.5 * (t.z1[i] + t.z2[i]);
        const double mx20 = 0.5 * (t.x2[i] + t.x0[i]), my20 = 0.5 * (t.y2[i] + t.y0[i]),
                     mz20 = 0.5 * (t.z2[i] + t.z0[i]);
        m.momentum += area / 3.0 *
                      (mx01 * mx01 + my01 * my01 + mz01 * mz01 + mx12 * mx12 + my12 * my12 +
                       mz12 * mz12 + mx20 * mx20 + my20 * my20 + mz20 * mz20);
        m.first_x += area / 3.0 * (t.x0[i] + t.x1[i] + t.x2[i]);
        m.first_y += area / 3.0 * (t.y0[i] + t.y1[i] + t.y2[i]);
        m.first_z += area / 3.0 * (t.z0[i] + t.z1[i] + t.z2[i]);
    }
    return m;
}

void fourier_synthesis_scalar(double a0, const double* a, const double* b, std::size_t modes,
                              const double* cos_table, const double* sin_table, std::size_t n,
                              double* h, double* dh, double* d2h) {
    const std::size_t mask = n - 1;
    for (std::size_t j = 0; j < n; ++j) {
        h[j] = a0;
        dh[j] = 0.0;
        d2h[j] = 0.0;
    }
    for (std::size_t k = 1; k <= modes; ++k) {
        const double ak = a[k - 1];
        const double bk = b[k - 1];
        if (ak == 0.0 && bk == 0.0) continue;
        const double kd = static_cast<double>(k);
        const double k2 = kd * kd;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (k * j) & mask;
            const double c = cos_table[idx];
            const double s = sin_table[idx];
            const double v = ak * c + bk * s;
            h[j] += v;
            dh[j] += kd * (bk * c - ak * s);
            d2h[j] -= k2 * v;
        }
    }
}

SupportMoments support_moments_scalar(const double* h, const double* d2h, std::size_t n) {
    SupportMoments m;
    for (std::size_t j = 0; j < n; ++j) {
        const double hh = h[j] * h[j];
        m.sum_h += h[j];
        m.sum_area += hh + h[j] * d2h[j];
        m.sum_momentum += hh * h[j] + 0.5 * hh * d2h[j];
    }
    return m;
}

double dot3_scalar(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

}  // namespace

const KernelTable& scalar() {
    static const KernelTable table{
        "scalar",
        polygon_moments_scalar,
        triangle_moments_scalar,
        fourier_synthesis_scalar,
        support_moments_scalar,
        dot3_scalar,
    };
    return table;
}

}  // namespace wlab::kernels
