#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "dynfatigue/trajectory.hpp"

namespace {

using namespace dynfatigue;
constexpr double kPi = std::numbers::pi;

// Solves the rest-to-rest boundary system for the monomial coefficients by
// Gaussian elimination with partial pivoting.
std::array<double, 6> solve_boundary_system(double q0, double q1, double tf) {
    double a[6][7] = {};
    auto row_pos = [&](int r, double t, double rhs) {
        for (int j = 0; j < 6; ++j) a[r][j] = std::pow(t, j);
        a[r][6] = rhs;
    };
    auto row_vel = [&](int r, double t) {
        for (int j = 1; j < 6; ++j) a[r][j] = j * std::pow(t, j - 1);
    };
    auto row_acc = [&](int r, double t) {
        for (int j = 2; j < 6; ++j) a[r][j] = j * (j - 1) * std::pow(t, j - 2);
    };
    row_pos(0, 0.0, q0);
    row_vel(1, 0.0);
    row_acc(2, 0.0);
    row_pos(3, tf, q1);
    row_vel(4, tf);
    row_acc(5, tf);
    for (int c = 0; c < 6; ++c) {
        int p = c;
        for (int r = c + 1; r < 6; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        }
        for (int j = 0; j < 7; ++j) std::swap(a[c][j], a[p][j]);
        for (int r = 0; r < 6; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (int j = c; j < 7; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::array<double, 6> x{};
    for (int i = 0; i < 6; ++i) x[i] = a[i][6] / a[i][i];
    return x;
}

TEST(InterpolationRatio, Boundaries) {
    EXPECT_EQ(interpolation_ratio(0.0, 2.0), 0.0);
    EXPECT_EQ(interpolation_ratio(2.0, 2.0), 1.0);
}

TEST(InterpolationRatio, Midpoint) { EXPECT_NEAR(interpolation_ratio(0.5, 1.0), 0.5, 1e-15); }

TEST(InterpolationRatio, QuarterPoint) {
    // 10/64 - 15/256 + 6/1024
    EXPECT_NEAR(interpolation_ratio(0.25, 1.0), 0.103515625, 1e-15);
}

TEST(InterpolationRatio, OutOfRange) {
    EXPECT_THROW(interpolation_ratio(-0.1, 1.0), DomainError);
    EXPECT_THROW(interpolation_ratio(1.1, 1.0), DomainError);
    EXPECT_THROW(interpolation_ratio(0.0, 0.0), DomainError);
}

TEST(InterpolationRatio, SymmetryAndMonotonicity) {
    const double tf = 1.7;
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = tf * i / 1000.0;
        const double r = interpolation_ratio(t, tf);
        EXPECT_NEAR(r + interpolation_ratio(tf - t, tf), 1.0, 1e-14);
        EXPECT_GE(r, prev);
        prev = r;
    }
}

TEST(Evaluate, PaperSegmentMidpoint) {
    const TrajectorySegment seg{0.0, 5.0 * kPi / 12.0, 1.0};
    const KinematicSample s = evaluate(seg, 0.5);
    EXPECT_NEAR(s.angle, 5.0 * kPi / 24.0, 1e-15);
    EXPECT_NEAR(s.acceleration, 0.0, 1e-12);
    EXPECT_NEAR(s.velocity, 15.0 / 8.0 * 5.0 * kPi / 12.0, 1e-12);
    EXPECT_NEAR(s.velocity, 2.4544, 5e-5);
}

TEST(Evaluate, RestAtBothEnds) {
    const TrajectorySegment seg{0.3, -0.9, 0.8};
    const KinematicSample a = evaluate(seg, 0.0);
    const KinematicSample b = evaluate(seg, 0.8);
    EXPECT_EQ(a.angle, 0.3);
    EXPECT_EQ(a.velocity, 0.0);
    EXPECT_EQ(a.acceleration, 0.0);
    EXPECT_EQ(b.angle, -0.9);
    EXPECT_LT(std::abs(b.velocity), 1e-12);
    EXPECT_LT(std::abs(b.acceleration), 1e-12);
    EXPECT_THROW(evaluate(seg, 0.81), DomainError);
}

TEST(Evaluate, FiniteDifferenceConsistency) {
    const TrajectorySegment seg{0.0, 5.0 * kPi / 12.0, 1.0};
    const double h = 1e-5 * seg.duration;
    for (int i = 1; i < 100; ++i) {
        const double t = i / 100.0;
        const auto m = evaluate(seg, t - h), c = evaluate(seg, t), p = evaluate(seg, t + h);
        const double fd_v = (p.angle - m.angle) / (2 * h);
        const double fd_a = (p.angle - 2 * c.angle + m.angle) / (h * h);
        EXPECT_NEAR(fd_v, c.velocity, 1e-6 * std::abs(c.velocity) + 1e-9) << t;
        // Second difference carries ~eps/h^2 cancellation noise; compare the
        // acceleration through the velocity instead.
        const double fd_a2 = (p.velocity - m.velocity) / (2 * h);
        EXPECT_NEAR(fd_a2, c.acceleration, 1e-6 * std::abs(c.acceleration) + 1e-8) << t;
        EXPECT_NEAR(fd_a, c.acceleration, 1e-2) << t;
    }
}

TEST(QuinticCoefficients, MatchSolvedBoundarySystem) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-2.0, 2.0), dur(0.2, 3.0);
    for (int i = 0; i < 50; ++i) {
        const TrajectorySegment seg{ang(rng), ang(rng), dur(rng)};
        const auto closed = quintic_coefficients(seg);
        const auto solved = solve_boundary_system(seg.theta_initial, seg.theta_end, seg.duration);
        for (int j = 0; j < 6; ++j) {
            EXPECT_NEAR(closed[j], solved[j], 1e-9 * (1.0 + std::abs(closed[j]))) << j;
        }
        EXPECT_EQ(closed[1], 0.0);
        EXPECT_EQ(closed[2], 0.0);
    }
}

TEST(MakeCycle, PaperCycle) {
    const MotionCycle c = make_cycle(0.0, 5.0 * kPi / 12.0, 1.0);
    EXPECT_EQ(c.rise.theta_initial, 0.0);
    EXPECT_EQ(c.rise.theta_end, 5.0 * kPi / 12.0);
    EXPECT_EQ(c.fall.theta_initial, 5.0 * kPi / 12.0);
    EXPECT_EQ(c.fall.theta_end, 0.0);
    EXPECT_EQ(c.rise.duration, 1.0);
    EXPECT_EQ(c.fall.duration, 1.0);
    EXPECT_EQ(c.period(), 2.0);
    const auto junction = c.at(1.0);
    EXPECT_LT(std::abs(junction.velocity), 1e-12);
    EXPECT_LT(std::abs(junction.acceleration), 1e-12);
}

TEST(MakeCycle, DegenerateRange) {
    const MotionCycle c = make_cycle(0.0, 0.0, 1.0);
    for (double t : {0.0, 0.3, 1.0, 1.7, 2.0}) {
        const auto s = c.at(t);
        EXPECT_EQ(s.angle, 0.0);
        EXPECT_EQ(s.velocity, 0.0);
        EXPECT_EQ(s.acceleration, 0.0);
    }
}

TEST(MakeCycle, TimeReversalSymmetry) {
    const MotionCycle c = make_cycle(0.1, 1.2, 0.9);
    for (int i = 0; i <= 90; ++i) {
        const double t = 0.9 * i / 90.0;
        EXPECT_NEAR(c.at(t).angle, c.at(c.period() - t).angle, 1e-14);
    }
}

TEST(MakeCycle, PeriodicEvaluation) {
    const MotionCycle c = make_cycle(0.0, 1.0, 1.0);
    EXPECT_NEAR(c.at_periodic(4.5).angle, c.at(0.5).angle, 1e-14);
    EXPECT_THROW(c.at_periodic(-1.0), DomainError);
    EXPECT_THROW(make_cycle(0.0, 1.0, 0.0), DomainError);
}

TEST(TrajectoryProperty, RandomSegmentsRestToRest) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-kPi, kPi), dur(0.05, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const TrajectorySegment seg{ang(rng), ang(rng), dur(rng)};
        const auto a = evaluate(seg, 0.0), b = evaluate(seg, seg.duration);
        EXPECT_LT(std::abs(a.velocity), 1e-12);
        EXPECT_LT(std::abs(a.acceleration), 1e-12);
        EXPECT_LT(std::abs(b.velocity), 1e-12);
        EXPECT_LT(std::abs(b.acceleration), 1e-12);
    }
}

}  // namespace
