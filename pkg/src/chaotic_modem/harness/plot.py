"""SVG figure of simulated BER curves over theory lines."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

BER_FLOOR = 1e-6

_MARKERS = "os^vD<>ph*"


def emit_plot(curves, theory, path, title: str | None = None) -> None:
    """Log-scale BER vs Eb/N0; zero-error points are drawn at ``BER_FLOOR``."""
    path = Path(path)
    rc = {"svg.fonttype": "none", "svg.hashsalt": "chaotic-modem"}
    with matplotlib.rc_context(rc):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        try:
            for i, c in enumerate(curves):
                pts = [p for p in c.points if math.isfinite(p.ebno_db)]
                ax.semilogy(
                    [p.ebno_db for p in pts],
                    [max(p.ber, BER_FLOOR) for p in pts],
                    marker=_MARKERS[i % len(_MARKERS)], linestyle="-", label=c.label,
                )
            for t in theory:
                ax.semilogy(
                    [e for e, _ in t.points],
                    [max(v, BER_FLOOR) for _, v in t.points],
                    linestyle="--", label=t.label,
                )
            ax.set_xlabel("Eb/N0 [dB]")
            ax.set_ylabel("BER")
            ax.set_ylim(BER_FLOOR / 2, 1.0)
            ax.grid(True, which="both", alpha=0.3)
            n = next((c.N for c in curves), None)
            ax.set_title(title or (f"BER, N={n}" if n else "BER"))
            ax.legend(fontsize="small")
            fig.tight_layout()
            try:
                fig.savefig(path, format="svg", metadata={"Date": None})
            except OSError as exc:
                raise OSError(f"cannot write {path}: {exc.strerror}") from exc
        finally:
            plt.close(fig)
