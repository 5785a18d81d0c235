"""
Query expressions shared by the find, transform and render subcommands.
"""

from golden_tonnetz.engine.exceptions import NotFoundError, ToneParseError, UsageError
from golden_tonnetz.engine.render import HighlightKind
from golden_tonnetz.engine.tonnetz import (
    find_scale_figures, find_triad_occurrences, mode_path, plr_realize, tones_connected,
)
from golden_tonnetz.engine.tones import parse_scale, parse_tone, parse_triad, parse_word, render_tone, scale_tones

QUERY_KINDS = ("scale", "triad", "mode", "toneset", "plr")


def parse_tone_set(text):
    """Comma-separated note names ("C,E,G#") or a scale expression ("C-acoustic")"""
    if "-" in text:
        return scale_tones(parse_scale(text))
    tones, offset = [], 0
    for part in text.split(","):
        try:
            tones.append(parse_tone(part.strip()))
        except ToneParseError as e:
            raise ToneParseError(text, offset + e.position, e.reason) from None
        offset += len(part) + 1
    return tones


def nearest_occurrence(occurrences, cell=(0, 0)):
    """The occurrence whose figures lie closest to a cell"""
    def key(occ):
        distance = min(max(abs(c - cell[0]), abs(r - cell[1])) for c, r in occ.figure_refs)
        return (distance, occ.figure_refs[0][1], occ.figure_refs[0][0], occ.vertex_indices)
    return min(occurrences, key=key)


def start_occurrence(window, triad):
    occurrences = find_triad_occurrences(window, triad)
    if not occurrences:
        raise NotFoundError(triad)
    return nearest_occurrence(occurrences)


def run_query(window, kind, expression):
    """
    Resolve a query against a window.

    Args:
        window: TonnetzWindow
        kind: one of QUERY_KINDS
        expression: scale, triad, mode, tone set or "<triad>:<word>" for plr

    Returns:
        list: (HighlightKind, payload) pairs

    Raises:
        NotFoundError: nothing in the window answers the query
    """
    if kind == "scale":
        scale = parse_scale(expression)
        figures = find_scale_figures(window, scale)
        if not figures:
            raise NotFoundError(scale)
        return [(HighlightKind.SCALE_FIGURE, fig) for fig in figures]

    if kind == "triad":
        triad = parse_triad(expression)
        occurrences = find_triad_occurrences(window, triad)
        if not occurrences:
            raise NotFoundError(triad)
        return [(HighlightKind.TRIAD_OCCURRENCE, occ) for occ in occurrences]

    if kind == "mode":
        scale = parse_scale(expression)
        return [(HighlightKind.MODE_PATH, mode_path(window, scale.kind, scale.root))]

    if kind == "toneset":
        tones = parse_tone_set(expression)
        result = tones_connected(window, tones)
        if not result.connected:
            detail = f" (missing {', '.join(render_tone(t) for t in result.missing)})" if result.missing else ""
            raise NotFoundError(expression, f"tones {expression} are not connected in the window{detail}")
        return [(HighlightKind.TONE_SUBGRAPH, result)]

    if kind == "plr":
        triad_text, _, word_text = expression.partition(":")
        word = parse_word(word_text)
        current = start_occurrence(window, parse_triad(triad_text))
        moves = []
        for op in word:
            target = plr_realize(window, current, op)
            moves.append((HighlightKind.PLR_MOVE, (current, target)))
            current = target
        return moves or [(HighlightKind.TRIAD_OCCURRENCE, current)]

    raise UsageError(f"unknown query kind {kind!r}")


def describe(window, highlight_kind, payload):
    """JSON-ready description of a query result"""
    if highlight_kind == HighlightKind.SCALE_FIGURE:
        return {"scale": str(payload.scale), "cell": list(payload.cell), "vertices": list(payload.vertex_indices)}
    if highlight_kind == HighlightKind.TRIAD_OCCURRENCE:
        return payload.to_dict()
    if highlight_kind == HighlightKind.PLR_MOVE:
        source, target = payload
        return {"from": source.to_dict(), "to": target.to_dict()}
    return payload.to_dict(window)
