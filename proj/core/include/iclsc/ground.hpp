#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "iclsc/choice.hpp"
#include "iclsc/logic.hpp"

namespace icl {

struct GroundLiteral {
  bool positive = true;
  Atom atom;
};

struct GroundClause {
  Atom head;
  std::vector<GroundLiteral> body;
};

/// Relevant grounding: the subset of ground clause instances reachable
/// backward from the requested goal patterns, with disequalities and
/// arithmetic already resolved. Atomic choices become leaves. Candidate
/// atoms over-approximate derivability; the evaluator settles truth.
///
/// The context is monotone: ensure() may be called repeatedly with new
/// patterns and previously grounded patterns are re-joined when new
/// candidate atoms for a predicate they depend on appear.
class GroundContext {
 public:
  GroundContext(const Program& program, const Theory* theory, int horizon);

  /// Grounds everything relevant to atoms matching `pattern`.
  void ensure(const Atom& pattern);

  const std::vector<GroundClause>* rulesFor(const Atom& head) const;
  const ChoiceMatch* choiceInfo(const Atom& atom) const;

  /// Ground candidate atoms matching `pattern`, in first-seen order.
  std::vector<Atom> candidatesFor(const Atom& pattern) const;

  /// Instantiated alternatives encountered so far, with member counts.
  std::map<AltKey, int> seenAlternatives() const;

  /// Exports the grounded rules as a plain ground program.
  Program toProgram() const;

  int horizon() const { return horizon_; }

  /// Bumped whenever a new candidate atom appears; callers may key caches on it.
  std::size_t revision() const { return revision_; }

  /// Dense-id view of the grounding, for hash-free evaluation. Ids are
  /// assigned in first-seen order and stay stable as the grounding grows.
  struct CompiledRule {
    std::vector<std::uint32_t> body;  // atom id << 1, low bit set when negated
  };
  int idOf(const Atom& atom) const;
  std::size_t atomCount() const { return atomById_.size(); }
  const Atom& atomById(int id) const { return atomById_[static_cast<std::size_t>(id)]; }
  const ChoiceMatch* choiceById(int id) const {
    return choiceById_[static_cast<std::size_t>(id)];
  }
  const std::vector<CompiledRule>& rulesById(int id) const {
    return rulesById_[static_cast<std::size_t>(id)];
  }

 private:
  struct DoneInfo {
    Atom pattern;
    std::set<std::string> joinedPreds;
  };

  void drain();
  void process(const Atom& pattern, std::set<std::string>* joined);
  void expand(const Clause& clause, std::size_t index, Subst theta,
              const std::vector<std::pair<Term, Term>>& deferred,
              const Atom& pattern, std::set<std::string>* joined);
  void processSubpattern(const Atom& sub);
  void addRule(GroundClause rule);
  void addChoiceCandidates(const Atom& pattern);
  int intern(const Atom& atom);
  void requestPattern(const Atom& pattern, std::set<std::string>* joined);
  std::string canon(const Atom& pattern) const;
  Clause renameClause(const Clause& clause);

  const Program& program_;
  const Theory* theory_;
  int horizon_;
  long freshCounter_ = 0;
  std::size_t revision_ = 0;

  std::unordered_map<Atom, std::vector<GroundClause>> rules_;
  std::unordered_set<std::string> ruleKeys_;
  std::unordered_map<Atom, ChoiceMatch> choiceAtoms_;
  std::unordered_map<Atom, int> ids_;
  std::vector<Atom> atomById_;
  std::vector<const ChoiceMatch*> choiceById_;
  std::vector<std::vector<CompiledRule>> rulesById_;
  std::unordered_set<Atom> candidateSet_;
  std::map<std::string, std::vector<Atom>> candidatesByPred_;
  std::map<std::string, DoneInfo> done_;
  std::deque<std::string> worklist_;
  std::set<std::string> queued_;
  std::map<std::string, Atom> patterns_;
  std::vector<std::string> inProgress_;
  std::set<std::string> dirtyPreds_;
};

/// The ground subprogram relevant to `goal`, as a standalone program.
Program relevantGround(const Program& program, const Formula& goal, int horizon,
                       const Theory* theory = nullptr);

}  // namespace icl
