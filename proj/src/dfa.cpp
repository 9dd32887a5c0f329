#include "qsw/dfa.hpp"

#include <bit>
#include <deque>
#include <limits>

namespace qsw
{
	Dfa::Dfa(int n_states, const std::map<char, std::vector<int>> &letters)
		: n_states_(n_states)
	{
		if (n_states < 1)
			throw ValidationError("Dfa: n_states must be positive");
		if (letters.empty())
			throw ValidationError("Dfa: alphabet is empty");
		for (const auto &[letter, table] : letters)
		{
			if (static_cast<int>(table.size()) != n_states)
				throw ValidationError(std::string("Dfa: letter '") + letter + "' has a transition table of the wrong size");
			std::vector<int> raw(table.size());
			for (std::size_t i = 0; i < table.size(); ++i)
			{
				if (table[i] < 1 || table[i] > n_states)
					throw ValidationError(std::string("Dfa: letter '") + letter + "' maps a state outside 1..N");
				raw[i] = table[i] - 1;
			}
			images_.emplace(letter, std::move(raw));
		}
	}

	std::string Dfa::letter_names() const
	{
		std::string names;
		for (const auto &[letter, table] : images_)
			names.push_back(letter);
		return names;
	}

	const std::vector<int> &Dfa::raw_images(char letter) const
	{
		auto it = images_.find(letter);
		if (it == images_.end())
			throw ValidationError(std::string("Dfa: unknown letter '") + letter + "'");
		return it->second;
	}

	int Dfa::step(int state, char letter) const
	{
		if (state < 1 || state > n_states_)
			throw ValidationError("Dfa: state outside 1..N");
		return raw_images(letter)[state - 1] + 1;
	}

	std::vector<int> Dfa::image_table(char letter) const
	{
		std::vector<int> out = raw_images(letter);
		for (int &s : out)
			++s;
		return out;
	}

	bool Dfa::is_permutation(char letter) const
	{
		std::vector<bool> hit(n_states_, false);
		for (int s : raw_images(letter))
		{
			if (hit[s])
				return false;
			hit[s] = true;
		}
		return true;
	}

	StateSet StateSet::full(int n)
	{
		if (n < 1 || n > 32)
			throw LimitError("StateSet: supports 1..32 states");
		return StateSet(n == 32 ? ~0u : ((1u << n) - 1u));
	}

	int StateSet::size() const { return std::popcount(mask_); }

	int StateSet::first() const { return std::countr_zero(mask_) + 1; }

	StateSet StateSet::image(const Dfa &d, char letter) const
	{
		const auto &raw = d.raw_images(letter);
		std::uint32_t out = 0;
		for (std::uint32_t m = mask_; m != 0; m &= m - 1)
			out |= 1u << raw[std::countr_zero(m)];
		return StateSet(out);
	}

	int apply_classical_word(const Dfa &d, const ClassicalWord &w, int state)
	{
		if (state < 1 || state > d.n_states())
			throw ValidationError("apply_classical_word: state outside 1..N");
		for (char c : w)
			state = d.step(state, c);
		return state;
	}

	SyncCheck is_synchronizing(const Dfa &d, const ClassicalWord &w)
	{
		for (char c : w)
			if (!d.has_letter(c))
				throw ValidationError(std::string("is_synchronizing: unknown letter '") + c + "'");
		const int target = apply_classical_word(d, w, 1);
		for (int s = 2; s <= d.n_states(); ++s)
			if (apply_classical_word(d, w, s) != target)
				return {};
		return {true, target};
	}

	std::optional<ClassicalWord> shortest_sync_word(const Dfa &d)
	{
		const int n = d.n_states();
		if (n > kMaxExhaustiveStates)
			throw LimitError("shortest_sync_word: N = " + std::to_string(n) + " exceeds the exhaustive limit of "
							 + std::to_string(kMaxExhaustiveStates) + " states; use greedy_sync_word");
		if (n == 1)
			return ClassicalWord{};

		const std::string letters = d.letter_names();
		const std::size_t space = std::size_t{1} << n;
		constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
		std::vector<std::uint32_t> parent(space, kUnseen);
		std::vector<char> via(space, 0);

		const StateSet start = StateSet::full(n);
		parent[start.mask()] = start.mask();
		std::deque<std::uint32_t> frontier{start.mask()};

		while (!frontier.empty())
		{
			const StateSet current(frontier.front());
			frontier.pop_front();
			for (char letter : letters)
			{
				const StateSet next = current.image(d, letter);
				if (parent[next.mask()] != kUnseen)
					continue;
				parent[next.mask()] = current.mask();
				via[next.mask()] = letter;
				if (next.size() == 1)
				{
					ClassicalWord word;
					for (std::uint32_t m = next.mask(); m != start.mask(); m = parent[m])
						word.insert(word.begin(), via[m]);
					return word;
				}
				frontier.push_back(next.mask());
			}
		}
		return std::nullopt;
	}

	namespace
	{
		/// Shortest merging distance for every unordered pair {p, q}, p < q (0-based),
		/// by backward BFS from the diagonal of the pair automaton.
		class PairMerger
		{
		public:
			explicit PairMerger(const Dfa &d)
				: d_(d), n_(d.n_states()), letters_(d.letter_names()), dist_(std::size_t(n_) * n_, kUnreachable)
			{
				// Reverse edges: preimages of each state under each letter.
				std::vector<std::vector<std::vector<int>>> pre(letters_.size(), std::vector<std::vector<int>>(n_));
				for (std::size_t li = 0; li < letters_.size(); ++li)
				{
					const auto &raw = d.raw_images(letters_[li]);
					for (int s = 0; s < n_; ++s)
						pre[li][raw[s]].push_back(s);
				}

				std::deque<std::pair<int, int>> queue;
				for (int s = 0; s < n_; ++s)
				{
					dist_[index(s, s)] = 0;
					queue.emplace_back(s, s);
				}
				while (!queue.empty())
				{
					auto [u, v] = queue.front();
					queue.pop_front();
					const int du = dist_[index(u, v)];
					for (std::size_t li = 0; li < letters_.size(); ++li)
						for (int p : pre[li][u])
							for (int q : pre[li][v])
							{
								if (p == q)
									continue;
								auto &slot = dist_[index(p, q)];
								if (slot == kUnreachable)
								{
									slot = du + 1;
									queue.emplace_back(std::min(p, q), std::max(p, q));
								}
							}
				}
			}

			int distance(int p, int q) const { return dist_[index(p, q)]; }

			/// Shortest merging word for {p, q}: at each step the smallest letter
			/// that decreases the distance.
			ClassicalWord merging_word(int p, int q) const
			{
				ClassicalWord w;
				while (p != q)
				{
					const int dpq = distance(p, q);
					for (char letter : letters_)
					{
						const auto &raw = d_.raw_images(letter);
						if (distance(raw[p], raw[q]) == dpq - 1)
						{
							w.push_back(letter);
							p = raw[p];
							q = raw[q];
							break;
						}
					}
				}
				return w;
			}

			static constexpr int kUnreachable = -1;

		private:
			std::size_t index(int p, int q) const
			{
				return p < q ? std::size_t(p) * n_ + q : std::size_t(q) * n_ + p;
			}

			const Dfa &d_;
			int n_;
			std::string letters_;
			std::vector<int> dist_;
		};
	} // namespace

	std::optional<ClassicalWord> greedy_sync_word(const Dfa &d)
	{
		const int n = d.n_states();
		const PairMerger merger(d);
		for (int p = 0; p < n; ++p)
			for (int q = p + 1; q < n; ++q)
				if (merger.distance(p, q) == PairMerger::kUnreachable)
					return std::nullopt;

		std::vector<bool> alive(n, true);
		int count = n;
		ClassicalWord word;
		while (count > 1)
		{
			int best_p = -1, best_q = -1, best_d = std::numeric_limits<int>::max();
			for (int p = 0; p < n; ++p)
			{
				if (!alive[p])
					continue;
				for (int q = p + 1; q < n; ++q)
					if (alive[q] && merger.distance(p, q) < best_d)
					{
						best_d = merger.distance(p, q);
						best_p = p;
						best_q = q;
					}
			}
			const ClassicalWord piece = merger.merging_word(best_p, best_q);
			word += piece;

			std::vector<bool> next(n, false);
			for (int s = 0; s < n; ++s)
				if (alive[s])
				{
					int t = s;
					for (char c : piece)
						t = d.raw_images(c)[t];
					next[t] = true;
				}
			alive.swap(next);
			count = 0;
			for (bool b : alive)
				count += b;
		}
		return word;
	}

	Dfa make_cerny_automaton(int n)
	{
		if (n < 2)
			throw ValidationError("make_cerny_automaton: n must be at least 2");
		std::vector<int> a(n), b(n);
		for (int s = 1; s <= n; ++s)
		{
			a[s - 1] = s % n + 1;
			b[s - 1] = s;
		}
		b[0] = 2;
		return Dfa(n, {{'a', a}, {'b', b}});
	}

	Dfa make_bab_example_automaton(int a3)
	{
		return Dfa(3, {{'A', {2, 3, a3}}, {'B', {2, 1, 1}}});
	}
} // namespace qsw
