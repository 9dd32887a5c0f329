#include "qsw/prep.hpp"

#include "qsw/parallel.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace qsw
{
	namespace
	{
		constexpr double kTwoPi = 2 * std::numbers::pi;

		void check_family(const PrepFamily &family)
		{
			if (family.n < 1)
				throw ValidationError("PrepFamily: n must be at least 1");
			if (!std::isfinite(family.theta) || !std::isfinite(family.phi))
				throw ValidationError("PrepFamily: angles must be finite");
			if (family.phase && (!std::isfinite(family.phase->alpha) || !std::isfinite(family.phase->beta)))
				throw ValidationError("PrepFamily: phase angles must be finite");
		}

		ComplexMat rotation_A2(double theta) { return make_channel_A(theta).kraus_ops()[1]; }
		ComplexMat rotation_B(double phi) { return make_channel_B(phi).kraus_ops()[0]; }
		ComplexMat phase_C(const PhaseAngles &p) { return make_channel_C(p.alpha, p.beta).kraus_ops()[0]; }

		/// Powers M^0 .. M^(n-1) applied to v, by repeated multiplication.
		std::vector<ComplexVec> orbit(const ComplexMat &m, ComplexVec v, int n)
		{
			std::vector<ComplexVec> out;
			out.reserve(n);
			for (int i = 0; i < n; ++i)
			{
				out.push_back(v);
				v = m * v;
			}
			return out;
		}

		std::vector<ComplexMat> powers(const ComplexMat &m, int n)
		{
			std::vector<ComplexMat> out;
			out.reserve(n);
			ComplexMat p = ComplexMat::Identity();
			for (int i = 0; i < n; ++i)
			{
				out.push_back(p);
				p = m * p;
			}
			return out;
		}

		/// Member states in (l, k, j) lexicographic order, as raw kets.
		std::vector<ComplexVec> family_kets(const PrepFamily &family)
		{
			const int n = family.n;
			const int n_l = family.is_complex() ? n : 1;
			const auto a_orbit = orbit(rotation_A2(family.theta), PureState::basis(2).amplitudes(), n);
			const auto b_pow = powers(rotation_B(family.phi), n);
			const auto c_pow = family.is_complex() ? powers(phase_C(*family.phase), n)
												   : std::vector<ComplexMat>{ComplexMat::Identity()};
			std::vector<ComplexVec> out(static_cast<std::size_t>(n_l) * n * n);
			parallel_for(out.size(), [&](std::size_t flat) {
				const std::size_t j = flat % n;
				const std::size_t k = (flat / n) % n;
				const std::size_t l = flat / (std::size_t(n) * n);
				out[flat] = c_pow[l] * (b_pow[k] * a_orbit[j]);
			});
			return out;
		}

		PrepIndex unflatten(std::size_t flat, int n)
		{
			return {static_cast<int>(flat / (std::size_t(n) * n)), static_cast<int>((flat / n) % n),
					static_cast<int>(flat % n)};
		}

		void check_cap(const PrepFamily &family, std::size_t cap)
		{
			if (family.size() > cap)
				throw LimitError("PrepFamily: " + std::to_string(family.size()) + " states exceed the cap of "
								 + std::to_string(cap) + "; a cap of at least " + std::to_string(family.size())
								 + " is required");
		}

		double radical_inverse(std::uint64_t i, unsigned base)
		{
			double inv = 1.0 / base, f = inv, r = 0;
			while (i > 0)
			{
				r += f * static_cast<double>(i % base);
				i /= base;
				f *= inv;
			}
			return r;
		}

		double unit_double(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
	} // namespace

	std::size_t PrepFamily::size() const
	{
		const std::size_t m = n < 1 ? 0 : static_cast<std::size_t>(n);
		return is_complex() ? m * m * m : m * m;
	}

	PureState prep_state(const PrepFamily &family, const PrepIndex &idx)
	{
		check_family(family);
		const int n_l = family.is_complex() ? family.n : 1;
		if (idx.j < 0 || idx.j >= family.n || idx.k < 0 || idx.k >= family.n || idx.l < 0 || idx.l >= n_l)
			throw ValidationError("prep_state: index outside the family's range");

		ComplexVec v = PureState::basis(2).amplitudes();
		const ComplexMat a2 = rotation_A2(family.theta);
		for (int i = 0; i < idx.j; ++i)
			v = a2 * v;
		const ComplexMat b = rotation_B(family.phi);
		for (int i = 0; i < idx.k; ++i)
			v = b * v;
		if (idx.l > 0)
		{
			const ComplexMat c = phase_C(*family.phase);
			for (int i = 0; i < idx.l; ++i)
				v = c * v;
		}
		return PureState::normalized(v);
	}

	std::vector<FamilyMember> generate_family(const PrepFamily &family, std::size_t cap)
	{
		check_family(family);
		check_cap(family, cap);
		const auto kets = family_kets(family);
		std::vector<FamilyMember> out;
		out.reserve(kets.size());
		for (std::size_t i = 0; i < kets.size(); ++i)
			out.push_back({unflatten(i, family.n), PureState::normalized(kets[i])});
		return out;
	}

	std::vector<ComplexVec> probe_targets(std::size_t count, bool complex_targets, std::uint64_t seed)
	{
		std::mt19937_64 rng(seed);
		const unsigned bases[4] = {2, 3, 5, 7};
		double shift[4];
		for (double &s : shift)
			s = unit_double(rng);

		std::vector<ComplexVec> out;
		out.reserve(count);
		for (std::size_t i = 0; i < count; ++i)
		{
			double u[4];
			for (int d = 0; d < (complex_targets ? 4 : 2); ++d)
			{
				u[d] = radical_inverse(i + 1, bases[d]) + shift[d];
				u[d] -= std::floor(u[d]);
			}
			ComplexVec v;
			if (!complex_targets)
			{
				const double z = 1 - 2 * u[0];
				const double r = std::sqrt(std::max(0.0, 1 - z * z));
				const double az = kTwoPi * u[1];
				v << r * std::cos(az), r * std::sin(az), z;
			}
			else
			{
				// Uniform weights on the simplex and uniform relative phases give the
				// unitarily invariant measure on pure states.
				const double a = std::sqrt(u[0]);
				const double p1 = 1 - a, p2 = a * (1 - u[1]), p3 = a * u[1];
				v << std::sqrt(p1), std::polar(std::sqrt(p2), kTwoPi * u[2]), std::polar(std::sqrt(p3), kTwoPi * u[3]);
			}
			out.push_back(v.normalized());
		}
		return out;
	}

	CoveringResult covering_radius_of(std::span<const ComplexVec> states, std::span<const ComplexVec> probes)
	{
		if (states.empty() || probes.empty())
			throw ValidationError("covering_radius_of: states and probes must be non-empty");
		Eigen::Matrix<std::complex<double>, Eigen::Dynamic, kDim> rows(static_cast<Eigen::Index>(states.size()), kDim);
		for (std::size_t i = 0; i < states.size(); ++i)
			rows.row(static_cast<Eigen::Index>(i)) = states[i].adjoint();

		std::vector<double> nearest(probes.size());
		parallel_for(probes.size(), [&](std::size_t p) {
			const double best = (rows * probes[p]).cwiseAbs().maxCoeff();
			nearest[p] = std::acos(std::clamp(best, 0.0, 1.0));
		});

		CoveringResult result{nearest[0], 0};
		for (std::size_t p = 1; p < nearest.size(); ++p)
			if (nearest[p] > result.radius)
				result = {nearest[p], p};
		return result;
	}

	CoverageReport covering_radius(const PrepFamily &family, std::size_t num_probe_targets, std::uint64_t seed)
	{
		check_family(family);
		if (num_probe_targets < 100)
			throw ValidationError("covering_radius: at least 100 probe targets are required");
		check_cap(family, kDefaultFamilyCap);
		const auto kets = family_kets(family);
		const auto probes = probe_targets(num_probe_targets, family.is_complex(), seed);
		const CoveringResult r = covering_radius_of(kets, probes);
		return {family, r.radius, kets.size(), PureState::normalized(probes[r.worst_probe])};
	}

	CompileResult compile_target(const PrepFamily &family, const PureState &target, std::size_t cap)
	{
		check_family(family);
		check_cap(family, cap);

		if (!family.is_complex())
		{
			// Real up to a global phase: rotate the largest amplitude onto the real axis.
			const ComplexVec &t = target.amplitudes();
			Eigen::Index pivot;
			t.cwiseAbs().maxCoeff(&pivot);
			const ComplexVec aligned = t * std::conj(t(pivot)) / std::abs(t(pivot));
			if (aligned.imag().cwiseAbs().maxCoeff() > 1e-12)
				throw ValidationError("compile_target: target has complex amplitudes; the family needs the phase gate C "
									  "(alpha, beta)");
		}

		const auto kets = family_kets(family);
		std::vector<double> fidelity(kets.size());
		parallel_for(kets.size(), [&](std::size_t i) { fidelity[i] = std::norm(target.amplitudes().dot(kets[i])); });

		std::size_t best = 0;
		for (std::size_t i = 1; i < fidelity.size(); ++i)
			if (fidelity[i] > fidelity[best])
				best = i;

		const PrepIndex idx = unflatten(best, family.n);
		std::string letters = "ABA";
		letters.append(idx.j, 'A');
		letters.append(idx.k, 'B');
		letters.append(idx.l, 'C');
		auto alphabet = std::make_shared<const QuantumAlphabet>(make_standard_alphabet(family.theta, family.phi, family.phase));
		return {idx, QuantumWord(std::move(letters), std::move(alphabet)), std::clamp(fidelity[best], 0.0, 1.0)};
	}

	IncommensurabilityCheck check_incommensurability(double alpha, double beta, int max_denominator)
	{
		if (max_denominator < 1)
			throw ValidationError("check_incommensurability: max_denominator must be at least 1");
		if (!std::isfinite(alpha) || !std::isfinite(beta))
			throw ValidationError("check_incommensurability: angles must be finite");
		constexpr double kTolerance = 1e-9;

		for (int sum = 2; sum <= 2 * max_denominator; ++sum)
		{
			for (int a = std::max(1, sum - max_denominator); a <= std::min(max_denominator, sum - 1); ++a)
			{
				const int b_abs = sum - a;
				if (std::gcd(a, b_abs) != 1)
					continue;
				for (int b : {b_abs, -b_abs})
				{
					const double r = std::fmod(std::abs(a * alpha - b * beta), kTwoPi);
					if (std::min(r, kTwoPi - r) <= kTolerance)
						return {true, std::make_pair(a, b)};
				}
			}
		}
		return {};
	}
} // namespace qsw
