#pragma once

#include "qsw/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsw
{
	/// A quantum letter: rho -> sum_j K_j rho K_j^dagger with sum_j K_j^dagger K_j = I.
	class KrausChannel
	{
	public:
		/// Throws ValidationError when the operator list is empty or incomplete
		/// (entrywise defect of sum K^dagger K - I above 1e-12).
		KrausChannel(std::string name, std::vector<ComplexMat> kraus_ops);

		const std::string &name() const { return name_; }
		const std::vector<ComplexMat> &kraus_ops() const { return kraus_ops_; }

		/// Single Kraus operator with K^dagger K = K K^dagger = I.
		bool is_unitary(double tolerance = 1e-12) const;

	private:
		std::string name_;
		std::vector<ComplexMat> kraus_ops_;
	};

	/// Reset-and-rotate letter: A1 = |2><1|, A2 = rotation by theta in the (2,3)-plane.
	KrausChannel make_channel_A(double theta);
	/// Rotation by phi in the (1,2)-plane.
	KrausChannel make_channel_B(double phi);
	/// Diagonal phase gate diag(1, e^{i alpha}, e^{i beta}).
	KrausChannel make_channel_C(double alpha, double beta);
	KrausChannel make_identity_channel(std::string name = "I");

	/// Letters are single characters; names must be unique.
	class QuantumAlphabet
	{
	public:
		QuantumAlphabet() = default;

		void add(char letter, KrausChannel channel);
		bool contains(char letter) const { return letters_.count(letter) != 0; }
		const KrausChannel &at(char letter) const;
		std::size_t size() const { return letters_.size(); }
		/// Letter names in ascending order.
		std::string letter_names() const;

	private:
		std::map<char, KrausChannel> letters_;
	};

	struct PhaseAngles
	{
		double alpha = 0;
		double beta = 0;
	};

	/// {A(theta), B(phi)}, plus C(alpha, beta) when phase angles are given.
	QuantumAlphabet make_standard_alphabet(double theta, double phi, std::optional<PhaseAngles> phase = std::nullopt);

	/// A word over a fixed alphabet, applied left to right: "ABA" means A, then B, then A.
	class QuantumWord
	{
	public:
		/// Throws ValidationError when a letter is not in the alphabet.
		QuantumWord(std::string letters, std::shared_ptr<const QuantumAlphabet> alphabet);

		const std::string &letters() const { return letters_; }
		const QuantumAlphabet &alphabet() const { return *alphabet_; }
		const std::shared_ptr<const QuantumAlphabet> &alphabet_ptr() const { return alphabet_; }
		std::size_t size() const { return letters_.size(); }
		bool empty() const { return letters_.empty(); }

		/// Concatenation; both words must share the same alphabet object.
		QuantumWord operator+(const QuantumWord &other) const;

	private:
		std::string letters_;
		std::shared_ptr<const QuantumAlphabet> alphabet_;
	};

	/// Output is re-projected onto the Hermitian matrices and validated.
	DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho);
	DensityMatrix apply_word(const QuantumWord &w, const DensityMatrix &rho);

	/// Heisenberg-picture dual sum_j K_j^dagger X K_j.
	ComplexMat adjoint_apply_channel(const KrausChannel &ch, const ComplexMat &obs);

	/// W^dagger(obs): letters in reverse order, so that
	/// tr(W(rho) X) = tr(rho W^dagger(X)). Throws ValidationError on a non-Hermitian observable.
	ComplexMat adjoint_apply_word(const QuantumWord &w, const ComplexMat &obs);
} // namespace qsw
