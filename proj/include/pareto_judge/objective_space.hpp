#ifndef PARETO_JUDGE_OBJECTIVE_SPACE_HPP
#define PARETO_JUDGE_OBJECTIVE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pareto_judge/errors.hpp"

namespace pareto_judge {

// All objectives are maximised. A point is a row vector so that rows of a
// PointMatrix and standalone points share one shape.
template <typename Scalar>
using ObjectivePoint = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ObjectivePointd = ObjectivePoint<double>;
using PointMatrixd = PointMatrix<double>;

template <typename Derived>
void require_valid_point(const Eigen::MatrixBase<Derived>& p)
{
    if (p.size() < 1) {
        throw std::invalid_argument("objective point needs at least one coordinate");
    }
    if (!p.allFinite()) {
        throw std::invalid_argument("objective point coordinates must be finite");
    }
}

template <typename A, typename B>
void require_same_dimension(const Eigen::MatrixBase<A>& p, const Eigen::MatrixBase<B>& r)
{
    if (p.size() != r.size()) {
        throw DimensionMismatch(static_cast<std::size_t>(p.size()), static_cast<std::size_t>(r.size()));
    }
}

// A labelled, non-empty collection of points sharing one dimensionality.
// Rows are points.
template <typename Scalar>
class SolutionSet {
public:
    using Point = ObjectivePoint<Scalar>;
    using Matrix = PointMatrix<Scalar>;

    SolutionSet(std::string label, Matrix points) : label_(std::move(label)), points_(std::move(points))
    {
        if (points_.rows() == 0) {
            throw std::invalid_argument("solution set '" + label_ + "' is empty");
        }
        if (points_.cols() == 0) {
            throw std::invalid_argument("solution set '" + label_ + "' has zero objectives");
        }
        if (!points_.allFinite()) {
            throw std::invalid_argument("solution set '" + label_ + "' has non-finite coordinates");
        }
    }

    static SolutionSet from_points(std::string label, std::span<const Point> points)
    {
        if (points.empty()) {
            throw std::invalid_argument("solution set '" + label + "' is empty");
        }
        const auto dim = points.front().size();
        Matrix m(static_cast<Eigen::Index>(points.size()), dim);
        for (std::size_t i = 0; i < points.size(); ++i) {
            require_same_dimension(points.front(), points[i]);
            m.row(static_cast<Eigen::Index>(i)) = points[i];
        }
        return SolutionSet(std::move(label), std::move(m));
    }

    static SolutionSet single(std::string label, const Point& p)
    {
        require_valid_point(p);
        return SolutionSet(std::move(label), Matrix(p));
    }

    const std::string& label() const noexcept { return label_; }
    const Matrix& points() const noexcept { return points_; }
    Eigen::Index size() const noexcept { return points_.rows(); }
    Eigen::Index dimension() const noexcept { return points_.cols(); }
    auto point(Eigen::Index i) const { return points_.row(i); }

private:
    std::string label_;
    Matrix points_;
};

using SolutionSetd = SolutionSet<double>;

/// p strictly dominates r when it is strictly greater in every coordinate.
/// Comparison is exact; there is no epsilon.
template <typename A, typename B>
bool strictly_dominates(const Eigen::MatrixBase<A>& p, const Eigen::MatrixBase<B>& r)
{
    require_same_dimension(p, r);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(p(i) > r(i))) {
            return false;
        }
    }
    return true;
}

namespace detail {

template <typename Derived>
bool lex_less(const Eigen::MatrixBase<Derived>& m, Eigen::Index a, Eigen::Index b)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m(a, j) != m(b, j)) {
            return m(a, j) < m(b, j);
        }
    }
    return false;
}

template <typename Derived>
bool rows_equal(const Eigen::MatrixBase<Derived>& m, Eigen::Index a, Eigen::Index b)
{
    return (m.row(a).array() == m.row(b).array()).all();
}

} // namespace detail

/// Points of `s` not strictly dominated by any other point of `s`, with exact
/// duplicates collapsed, in ascending lexicographic order.
///
/// Points are visited in descending order of the first coordinate. Only a
/// point with a strictly larger first coordinate can dominate, and any
/// dominated dominator is itself dominated by a survivor with an even larger
/// first coordinate, so each point only needs checking against survivors of
/// earlier groups.
template <typename Scalar>
SolutionSet<Scalar> pareto_front(const SolutionSet<Scalar>& s)
{
    const auto& m = s.points();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return detail::lex_less(m, b, a); });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](Eigen::Index a, Eigen::Index b) { return detail::rows_equal(m, a, b); }),
                order.end());

    std::vector<Eigen::Index> survivors;
    std::size_t group_begin = 0;
    while (group_begin < order.size()) {
        std::size_t group_end = group_begin;
        while (group_end < order.size() && m(order[group_end], 0) == m(order[group_begin], 0)) {
            ++group_end;
        }
        const std::size_t checked = survivors.size();
        for (std::size_t k = group_begin; k < group_end; ++k) {
            const auto candidate = m.row(order[k]);
            bool dominated = false;
            for (std::size_t j = 0; j < checked && !dominated; ++j) {
                dominated = strictly_dominates(m.row(survivors[j]), candidate);
            }
            if (!dominated) {
                survivors.push_back(order[k]);
            }
        }
        group_begin = group_end;
    }

    std::reverse(survivors.begin(), survivors.end());
    PointMatrix<Scalar> out(static_cast<Eigen::Index>(survivors.size()), m.cols());
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = m.row(survivors[i]);
    }
    return SolutionSet<Scalar>(s.label(), std::move(out));
}

} // namespace pareto_judge

#endif // PARETO_JUDGE_OBJECTIVE_SPACE_HPP
