#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsw
{
	/// Raised when a value violates a documented invariant (non-Hermitian input,
	/// unnormalized ket, incomplete Kraus set, unknown letter, ...).
	class ValidationError : public std::invalid_argument
	{
	public:
		using std::invalid_argument::invalid_argument;
	};

	/// Raised when a request exceeds a hard computational limit (subset BFS size,
	/// family cap, word-search length).
	class LimitError : public std::length_error
	{
	public:
		using std::length_error::length_error;
	};

	inline constexpr int kDim = 3;

	template <typename Real>
	using Ket = Eigen::Matrix<std::complex<Real>, kDim, 1>;
	template <typename Real>
	using Operator = Eigen::Matrix<std::complex<Real>, kDim, kDim>;

	typedef Ket<double> ComplexVec;
	typedef Operator<double> ComplexMat;

	namespace tol
	{
		inline constexpr double kHermitian = 1e-12;
		inline constexpr double kTrace = 1e-12;
		inline constexpr double kNorm = 1e-12;
		inline constexpr double kPsd = -1e-10;
		inline constexpr double kJacobiOffDiagonal = 1e-14;
		inline constexpr int kJacobiMaxSweeps = 100;
	} // namespace tol

	/// Largest entrywise modulus of M - M^dagger.
	template <typename Derived>
	typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived> &m)
	{
		return (m - m.adjoint()).cwiseAbs().maxCoeff();
	}

	template <typename Derived>
	bool is_hermitian(const Eigen::MatrixBase<Derived> &m, double tolerance = tol::kHermitian)
	{
		const auto scale = std::max<typename Derived::RealScalar>(1, m.cwiseAbs().maxCoeff());
		return hermitian_defect(m) <= tolerance * scale;
	}

	template <typename Derived>
	typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived> &m)
	{
		return (m + m.adjoint()) / typename Derived::RealScalar(2);
	}

	/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
	/// Jacobi rotations. Each pivot (p,q) is first rotated to a real entry by a
	/// diagonal phase and then annihilated by a real plane rotation.
	template <typename Derived>
	Eigen::Matrix<typename Derived::RealScalar, Derived::RowsAtCompileTime, 1>
	hermitian_eigenvalues(const Eigen::MatrixBase<Derived> &m)
	{
		using Real = typename Derived::RealScalar;
		using Cplx = std::complex<Real>;
		using Mat = typename Derived::PlainObject;

		if (m.rows() != m.cols())
			throw ValidationError("hermitian_eigenvalues: matrix is not square");
		if (!is_hermitian(m))
			throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian within tolerance");

		Mat a = hermitian_part(m);
		const Eigen::Index n = a.rows();
		const Real threshold = Real(tol::kJacobiOffDiagonal) * std::max<Real>(1, a.norm());

		auto off_norm = [&]() {
			Real s = 0;
			for (Eigen::Index i = 0; i < n; ++i)
				for (Eigen::Index j = 0; j < n; ++j)
					if (i != j)
						s += std::norm(a(i, j));
			return std::sqrt(s);
		};

		for (int sweep = 0; sweep < tol::kJacobiMaxSweeps && off_norm() > threshold; ++sweep)
		{
			for (Eigen::Index p = 0; p < n - 1; ++p)
			{
				for (Eigen::Index q = p + 1; q < n; ++q)
				{
					const Real mag = std::abs(a(p, q));
					if (mag == Real(0))
						continue;
					const Cplx phase = a(p, q) / mag;
					const Real app = std::real(a(p, p));
					const Real aqq = std::real(a(q, q));
					const Real tau = (aqq - app) / (2 * mag);
					const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(1 + tau * tau));
					const Real c = 1 / std::sqrt(1 + t * t);
					const Real s = t * c;

					// J = D R with D = diag(.., 1 @p, conj(phase) @q, ..) and R the
					// real rotation; the (p,q) entry of J^dagger A J vanishes.
					Mat j = Mat::Identity(n, n);
					j(p, p) = c;
					j(p, q) = s;
					j(q, p) = -s * std::conj(phase);
					j(q, q) = c * std::conj(phase);
					a = (j.adjoint() * a * j).eval();
					a(p, q) = a(q, p) = Cplx(0);
				}
			}
			a = hermitian_part(a);
		}

		Eigen::Matrix<Real, Derived::RowsAtCompileTime, 1> ev(n);
		for (Eigen::Index i = 0; i < n; ++i)
			ev(i) = std::real(a(i, i));
		std::sort(ev.data(), ev.data() + n);
		return ev;
	}

	/// Normalized qutrit ket.
	template <typename Real>
	class BasicPureState
	{
	public:
		explicit BasicPureState(const Ket<Real> &amplitudes)
			: amplitudes_(amplitudes)
		{
			if (!amplitudes.allFinite())
				throw ValidationError("PureState: non-finite amplitude");
			if (std::abs(amplitudes.norm() - Real(1)) > Real(tol::kNorm))
				throw ValidationError("PureState: amplitudes are not normalized");
		}

		/// Normalizes first; rejects the zero vector.
		static BasicPureState normalized(const Ket<Real> &v)
		{
			const Real nrm = v.norm();
			if (!(nrm > 0) || !std::isfinite(nrm))
				throw ValidationError("PureState: cannot normalize a zero or non-finite vector");
			return BasicPureState(v / nrm);
		}

		/// The basis ket |label>, label in 1..3.
		static BasicPureState basis(int label)
		{
			if (label < 1 || label > kDim)
				throw ValidationError("PureState: basis label must be in 1..3");
			Ket<Real> v = Ket<Real>::Zero();
			v(label - 1) = 1;
			return BasicPureState(v);
		}

		const Ket<Real> &amplitudes() const { return amplitudes_; }
		std::complex<Real> operator[](int label) const { return amplitudes_(label - 1); }

	private:
		Ket<Real> amplitudes_;
	};

	/// Hermitian, unit-trace, positive semidefinite 3x3 matrix.
	template <typename Real>
	class BasicDensityMatrix
	{
	public:
		explicit BasicDensityMatrix(const Operator<Real> &m)
			: matrix_(m)
		{
			if (!m.allFinite())
				throw ValidationError("DensityMatrix: non-finite entry");
			if (hermitian_defect(m) > Real(tol::kHermitian))
				throw ValidationError("DensityMatrix: matrix is not Hermitian");
			if (std::abs(m.trace() - std::complex<Real>(1)) > Real(tol::kTrace))
				throw ValidationError("DensityMatrix: trace differs from 1");
			if (hermitian_eigenvalues(m)(0) < Real(tol::kPsd))
				throw ValidationError("DensityMatrix: matrix has a negative eigenvalue");
		}

		static BasicDensityMatrix maximally_mixed()
		{
			return BasicDensityMatrix(Operator<Real>::Identity() / Real(kDim));
		}

		const Operator<Real> &matrix() const { return matrix_; }
		std::complex<Real> operator()(int row, int col) const { return matrix_(row - 1, col - 1); }

	private:
		Operator<Real> matrix_;
	};

	typedef BasicPureState<double> PureState;
	typedef BasicDensityMatrix<double> DensityMatrix;

	template <typename Real>
	BasicDensityMatrix<Real> pure_to_density(const BasicPureState<Real> &psi)
	{
		const Ket<Real> &v = psi.amplitudes();
		return BasicDensityMatrix<Real>(v * v.adjoint());
	}

	/// <psi|rho|psi>, clamped to [0, 1].
	template <typename Real>
	Real fidelity_with_pure(const BasicDensityMatrix<Real> &rho, const BasicPureState<Real> &psi)
	{
		const Ket<Real> &v = psi.amplitudes();
		const Real f = std::real(v.dot(rho.matrix() * v));
		return std::clamp<Real>(f, 0, 1);
	}

	/// Projective angle arccos|<a|b>| in [0, pi/2].
	template <typename Real>
	Real projective_angle(const Ket<Real> &a, const Ket<Real> &b)
	{
		return std::acos(std::clamp<Real>(std::abs(a.dot(b)), 0, 1));
	}
} // namespace qsw
