"""End-to-end infelicity detection on synthetic data.

Generates a gold-labeled corpus with 20% corrupted pronouns, trains the
n-gram scorer on clean synthetic text, and evaluates substitution-based
detection.

Run with:  python3 demos/detection_pipeline.py
"""

from someany import binary_report, detect_all, train
from someany.synth import synth_corpus, synth_sentences, training_tokens

corpus, gold = synth_corpus(seed=2024, size=200, corruption_rate=0.2)
print(f"corpus: {len(corpus)} records, "
      f"{sum(1 for g in gold.values() if g.value == 'INFELICITOUS')} corrupted")

model = train(training_tokens(synth_sentences(seed=77, size=5000)), order=3)
print(f"trained order-{model.order} model, vocab {len(model.vocab)}")

outcomes = detect_all(corpus.records, model)
report = binary_report([(gold[o.sentence_id], o.predicted) for o in outcomes])

print()
print(f"accuracy  {report.accuracy:.3f}   (majority baseline "
      f"{report.baseline_accuracy:.3f})")
m = report.infelicitous
print(f"infelicitous class: P {m.precision:.3f}  R {m.recall:.3f}  F1 {m.f1:.3f}")
m = report.felicitous
print(f"correct class:      P {m.precision:.3f}  R {m.recall:.3f}  F1 {m.f1:.3f}")

print()
print("example flags:")
shown = 0
for outcome in outcomes:
    if outcome.flagged and shown < 3:
        record = next(r for r in corpus.records if r.id == outcome.sentence_id)
        print(f"  wrote {outcome.original.lemma!r}, model prefers "
              f"{outcome.model_choice.lemma!r}: {record.raw_text}")
        shown += 1
