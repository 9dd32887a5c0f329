#pragma once

#include "qsw/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsw
{
	/// Words over a DFA alphabet are strings of single-character letter names.
	typedef std::string ClassicalWord;

	/// Complete deterministic automaton on states 1..N.
	class Dfa
	{
	public:
		/// `letters` maps a letter to its image table: position i (0-based) holds the
		/// image of state i+1, as a label in 1..N. Throws ValidationError otherwise.
		Dfa(int n_states, const std::map<char, std::vector<int>> &letters);

		int n_states() const { return n_states_; }
		std::string letter_names() const;
		bool has_letter(char letter) const { return images_.count(letter) != 0; }

		/// Image of `state` (1-based) under `letter`.
		int step(int state, char letter) const;
		/// 1-based image table of a letter.
		std::vector<int> image_table(char letter) const;
		bool is_permutation(char letter) const;

		/// 0-based image table, used by the searches.
		const std::vector<int> &raw_images(char letter) const;

	private:
		int n_states_;
		std::map<char, std::vector<int>> images_;
	};

	/// Subset of 1..N stored as a bit mask; bit i is state i+1. N <= 32.
	class StateSet
	{
	public:
		StateSet() = default;
		explicit StateSet(std::uint32_t mask) : mask_(mask) {}
		static StateSet full(int n);

		bool contains(int state) const { return (mask_ >> (state - 1)) & 1u; }
		void insert(int state) { mask_ |= 1u << (state - 1); }
		int size() const;
		bool empty() const { return mask_ == 0; }
		std::uint32_t mask() const { return mask_; }
		/// Smallest member (1-based); set must be non-empty.
		int first() const;

		StateSet image(const Dfa &d, char letter) const;

		friend bool operator==(StateSet, StateSet) = default;

	private:
		std::uint32_t mask_ = 0;
	};

	inline constexpr int kMaxExhaustiveStates = 24;

	int apply_classical_word(const Dfa &d, const ClassicalWord &w, int state);

	struct SyncCheck
	{
		bool synchronizing = false;
		std::optional<int> state;
	};

	/// True iff every state is mapped to the same state by w.
	SyncCheck is_synchronizing(const Dfa &d, const ClassicalWord &w);

	/// Minimum-length synchronizing word by breadth-first search over the power
	/// automaton; among equal lengths, the lexicographically least. Throws
	/// LimitError when N > 24.
	std::optional<ClassicalWord> shortest_sync_word(const Dfa &d);

	/// Synchronizing word built by repeatedly merging the pair of current states
	/// with the shortest merging word (ties: smallest labels). Absent iff some
	/// pair of states cannot be merged.
	std::optional<ClassicalWord> greedy_sync_word(const Dfa &d);

	/// Cerny automaton C_n: 'a' cycles 1->2->...->n->1, 'b' maps 1->2 and fixes the rest.
	Dfa make_cerny_automaton(int n);

	/// Three-state example with B = (1->2, 2->1, 3->1) and A = (1->2, 2->3, 3->a3).
	Dfa make_bab_example_automaton(int a3 = 1);
} // namespace qsw
