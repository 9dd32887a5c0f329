#include "qsw/qsync.hpp"

#include "qsw/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsw
{
	double sync_fidelity(const QuantumWord &word, const PureState &target, const DensityMatrix &rho0)
	{
		return fidelity_with_pure(apply_word(word, rho0), target);
	}

	double worst_case_fidelity(const QuantumWord &word, const PureState &target)
	{
		const ComplexVec &t = target.amplitudes();
		const ComplexMat evolved = adjoint_apply_word(word, t * t.adjoint());
		return std::clamp(hermitian_eigenvalues(evolved)(0), 0.0, 1.0);
	}

	SyncReport make_sync_report(const QuantumWord &word, const PureState &target)
	{
		return {word, target, worst_case_fidelity(word, target),
				sync_fidelity(word, target, DensityMatrix::maximally_mixed())};
	}

	std::vector<double> linspace(double lo, double hi, int steps)
	{
		if (steps < 1)
			throw ValidationError("linspace: steps must be positive");
		if (!std::isfinite(lo) || !std::isfinite(hi))
			throw ValidationError("linspace: bounds must be finite");
		if (steps == 1)
			return {lo};
		std::vector<double> out(steps);
		for (int i = 0; i < steps; ++i)
			out[i] = lo + (hi - lo) * i / (steps - 1);
		out.back() = hi;
		return out;
	}

	Eigen::MatrixXd scan_overlap(const ScanGrid &grid, const PureState &target)
	{
		if (grid.theta_values.empty() || grid.phi_values.empty())
			throw ValidationError("scan_overlap: grid axes must be non-empty");
		for (double v : grid.theta_values)
			if (!std::isfinite(v))
				throw ValidationError("scan_overlap: non-finite theta");
		for (double v : grid.phi_values)
			if (!std::isfinite(v))
				throw ValidationError("scan_overlap: non-finite phi");

		const DensityMatrix rho0 = [&] {
			switch (grid.initial.kind)
			{
			case InitialStateSpec::Kind::Basis:
				return pure_to_density(PureState::basis(grid.initial.basis_label));
			default:
				return DensityMatrix::maximally_mixed();
			}
		}();

		// Validates the word's letters once, before fanning out.
		const auto probe = std::make_shared<const QuantumAlphabet>(
			make_standard_alphabet(grid.theta_values[0], grid.phi_values[0], grid.phase));
		QuantumWord(grid.word, probe);

		const auto rows = static_cast<Eigen::Index>(grid.theta_values.size());
		const auto cols = static_cast<Eigen::Index>(grid.phi_values.size());
		Eigen::MatrixXd out(rows, cols);
		parallel_for(static_cast<std::size_t>(rows * cols), [&](std::size_t flat) {
			const auto i = static_cast<Eigen::Index>(flat) / cols;
			const auto j = static_cast<Eigen::Index>(flat) % cols;
			const auto alphabet = std::make_shared<const QuantumAlphabet>(
				make_standard_alphabet(grid.theta_values[i], grid.phi_values[j], grid.phase));
			const QuantumWord word(grid.word, alphabet);
			out(i, j) = grid.initial.kind == InitialStateSpec::Kind::WorstCase ? worst_case_fidelity(word, target)
																			  : sync_fidelity(word, target, rho0);
		});
		return out;
	}

	DeltaBoundCheck verify_delta_bound(const RobustnessQuery &q, double quartic_slack)
	{
		if (!(q.delta >= 0) || q.delta > kMaxRobustnessDelta)
			throw ValidationError("verify_delta_bound: delta must lie in [0, 0.2] (small-deviation regime)");
		if (std::abs(q.theta_sign) != 1 || std::abs(q.phi_sign) != 1)
			throw ValidationError("verify_delta_bound: signs must be +1 or -1");

		constexpr double half_pi = std::numbers::pi / 2;
		const auto alphabet = std::make_shared<const QuantumAlphabet>(
			make_standard_alphabet(half_pi + q.theta_sign * q.delta, half_pi + q.phi_sign * q.delta));
		const double overlap = worst_case_fidelity(QuantumWord("ABA", alphabet), PureState::basis(2));
		const double d2 = q.delta * q.delta;
		const double bound = 1 - 0.75 * d2;
		return {overlap, bound, overlap >= bound - quartic_slack * d2 * d2};
	}

	std::vector<WordScore> search_sync_words(std::shared_ptr<const QuantumAlphabet> alphabet, const PureState &target,
											 int max_len, double threshold)
	{
		if (!alphabet || alphabet->size() == 0)
			throw ValidationError("search_sync_words: empty alphabet");
		if (max_len < 0)
			throw ValidationError("search_sync_words: max_len must be non-negative");
		if (alphabet->size() > kMaxSearchAlphabet)
			throw LimitError("search_sync_words: alphabets are limited to 3 letters");
		if (max_len > kMaxSearchLength)
			throw LimitError("search_sync_words: max_len " + std::to_string(max_len) + " exceeds the limit of "
							 + std::to_string(kMaxSearchLength));

		const std::string names = alphabet->letter_names();
		std::vector<std::string> candidates{""};
		for (std::size_t begin = 0, len = 1; len <= static_cast<std::size_t>(max_len); ++len)
		{
			const std::size_t end = candidates.size();
			for (std::size_t i = begin; i < end; ++i)
				for (char c : names)
					candidates.push_back(candidates[i] + c);
			begin = end;
		}

		std::vector<double> scores(candidates.size());
		parallel_for(candidates.size(), [&](std::size_t i) {
			scores[i] = worst_case_fidelity(QuantumWord(candidates[i], alphabet), target);
		});

		std::vector<WordScore> hits;
		for (std::size_t i = 0; i < candidates.size(); ++i)
			if (scores[i] >= threshold)
				hits.push_back({QuantumWord(candidates[i], alphabet), scores[i]});
		std::stable_sort(hits.begin(), hits.end(), [](const WordScore &a, const WordScore &b) {
			if (a.word.size() != b.word.size())
				return a.word.size() < b.word.size();
			if (a.worst_case_fidelity != b.worst_case_fidelity)
				return a.worst_case_fidelity > b.worst_case_fidelity;
			return a.word.letters() < b.word.letters();
		});
		return hits;
	}
} // namespace qsw
