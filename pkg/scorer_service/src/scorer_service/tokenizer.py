"""Whitespace tokenizer with terminal-punctuation and n't splitting,
compatible with the corpus toolkit's token boundaries."""

TERMINAL_PUNCT = {".", "?", "!", ",", ";", ":"}


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for chunk in text.split():
        trailing: list[str] = []
        while len(chunk) > 1 and chunk[-1] in TERMINAL_PUNCT:
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        if len(chunk) > 3 and chunk[-3:].lower() == "n't":
            tokens.append(chunk[:-3])
            tokens.append(chunk[-3:])
        else:
            tokens.append(chunk)
        tokens.extend(reversed(trailing))
    return [t.lower() for t in tokens]
