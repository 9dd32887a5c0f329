#pragma once

#include "qsw/channels.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qsw
{
	/// <target| W(rho0) |target>.
	double sync_fidelity(const QuantumWord &word, const PureState &target, const DensityMatrix &rho0);

	/// Infimum of sync_fidelity over every input state. Fidelity is linear in
	/// rho, so this is the smallest eigenvalue of W^dagger(|target><target|).
	double worst_case_fidelity(const QuantumWord &word, const PureState &target);

	struct SyncReport
	{
		QuantumWord word;
		PureState target;
		double worst_case_fidelity;
		double fidelity_from_maximally_mixed;
	};

	SyncReport make_sync_report(const QuantumWord &word, const PureState &target);

	struct InitialStateSpec
	{
		enum class Kind
		{
			MaximallyMixed,
			Basis,
			WorstCase
		};

		Kind kind = Kind::MaximallyMixed;
		int basis_label = 0; ///< 1..3, used with Kind::Basis

		static InitialStateSpec maximally_mixed() { return {}; }
		static InitialStateSpec basis(int label) { return {Kind::Basis, label}; }
		static InitialStateSpec worst_case() { return {Kind::WorstCase, 0}; }
	};

	struct ScanGrid
	{
		std::vector<double> theta_values;
		std::vector<double> phi_values;
		std::string word = "ABA";
		InitialStateSpec initial;
		std::optional<PhaseAngles> phase; ///< needed only when the word uses C
	};

	/// `steps` evenly spaced values from lo to hi inclusive (steps >= 2, or 1 giving {lo}).
	std::vector<double> linspace(double lo, double hi, int steps);

	/// Entry (i, j) is the overlap for channels built at (theta_i, phi_j).
	/// Grid points are evaluated in parallel; the result is independent of scheduling.
	Eigen::MatrixXd scan_overlap(const ScanGrid &grid, const PureState &target);

	struct RobustnessQuery
	{
		double delta = 0;
		int theta_sign = +1; ///< sign of theta - pi/2
		int phi_sign = +1;	 ///< sign of phi - pi/2
	};

	struct DeltaBoundCheck
	{
		double overlap;		///< worst-case fidelity of ABA with |2>
		double bound_value; ///< 1 - 0.75 delta^2
		bool satisfied;		///< overlap >= bound_value - c delta^4
	};

	inline constexpr double kMaxRobustnessDelta = 0.2;

	/// Quartic slack c: the largest (1 - 0.75 d^2 - overlap) / d^4 over the sweep
	/// d = 0.02, 0.04, ..., 0.2 of the worst-case overlap, rounded up.
	inline constexpr double kQuarticSlack = 3124.0;

	/// Worst-case overlap of ABA at theta = pi/2 + s_theta delta, phi = pi/2 + s_phi delta
	/// against the quadratic lower bound. Throws ValidationError for delta outside [0, 0.2].
	DeltaBoundCheck verify_delta_bound(const RobustnessQuery &q, double quartic_slack = kQuarticSlack);

	struct WordScore
	{
		QuantumWord word;
		double worst_case_fidelity;
	};

	inline constexpr int kMaxSearchLength = 8;
	inline constexpr std::size_t kMaxSearchAlphabet = 3;

	/// Every word of length 0..max_len (the empty word included) whose worst-case
	/// fidelity reaches `threshold`, sorted by length, then fidelity descending,
	/// then lexicographically. Throws LimitError past 8 letters or 3-letter alphabets.
	std::vector<WordScore> search_sync_words(std::shared_ptr<const QuantumAlphabet> alphabet, const PureState &target,
											 int max_len, double threshold);
} // namespace qsw
