#pragma once

#include "qsw/channels.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qsw
{
	/// Gate counts: l phase gates C, k rotations B, j rotations A2.
	struct PrepIndex
	{
		int l = 0;
		int k = 0;
		int j = 0;

		friend auto operator<=>(const PrepIndex &, const PrepIndex &) = default;
	};

	/// Family C^l B^k A2^j |2> with k, j (and l, when phase angles are set) in 0..n-1.
	struct PrepFamily
	{
		double theta = 0;
		double phi = 0;
		std::optional<PhaseAngles> phase;
		int n = 1;

		bool is_complex() const { return phase.has_value(); }
		/// n^2, or n^3 for complex families.
		std::size_t size() const;
	};

	inline constexpr std::size_t kDefaultFamilyCap = 1'000'000;

	/// C^l B^k A2^j |2> by iterated matrix application.
	PureState prep_state(const PrepFamily &family, const PrepIndex &idx);

	struct FamilyMember
	{
		PrepIndex index;
		PureState state;
	};

	/// All members in lexicographic (l, k, j) order. Throws LimitError above `cap`.
	std::vector<FamilyMember> generate_family(const PrepFamily &family, std::size_t cap = kDefaultFamilyCap);

	/// Deterministic probe targets: a Halton sequence with a seeded
	/// Cranley-Patterson shift, mapped uniformly onto the real unit sphere or,
	/// for `complex_targets`, onto the complex projective plane.
	std::vector<ComplexVec> probe_targets(std::size_t count, bool complex_targets, std::uint64_t seed = 42);

	struct CoveringResult
	{
		double radius;		   ///< max over probes of the projective angle to the nearest state
		std::size_t worst_probe; ///< first probe attaining the radius
	};

	CoveringResult covering_radius_of(std::span<const ComplexVec> states, std::span<const ComplexVec> probes);

	struct CoverageReport
	{
		PrepFamily family;
		double covering_radius;
		std::size_t num_states;
		PureState worst_target;
	};

	/// Throws ValidationError for fewer than 100 probes.
	CoverageReport covering_radius(const PrepFamily &family, std::size_t num_probe_targets = 10'000,
								   std::uint64_t seed = 42);

	struct CompileResult
	{
		PrepIndex index;
		QuantumWord full_word; ///< "ABA" + "A"*j + "B"*k + "C"*l
		double predicted_fidelity;
	};

	/// Best family member for `target` by exhaustive scan; ties go to the smallest
	/// (l, k, j). A target that is complex up to global phase needs a family with C.
	CompileResult compile_target(const PrepFamily &family, const PureState &target,
								 std::size_t cap = kDefaultFamilyCap);

	struct IncommensurabilityCheck
	{
		bool commensurate_pair_found = false;
		std::optional<std::pair<int, int>> witness; ///< (a, b) with a alpha = b beta mod 2 pi
	};

	/// Searches coprime (a, b), 1 <= a <= max_denominator, 0 < |b| <= max_denominator,
	/// by increasing |a| + |b| (then a, then b positive before negative).
	IncommensurabilityCheck check_incommensurability(double alpha, double beta, int max_denominator);
} // namespace qsw
