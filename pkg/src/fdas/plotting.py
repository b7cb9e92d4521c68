"""Static SVG line charts of sum throughput, drawn from an output table."""

from __future__ import annotations

import io

STRATEGY_STYLE = {
    "MM-AS": {"color": "tab:green", "marker": "o"},
    "LI-AS": {"color": "tab:orange", "marker": "^"},
    "MO-WS": {"color": "tab:blue", "marker": "s"},
    "MO-EWC": {"color": "tab:red", "marker": "*"},
}

X_LABELS = {"w": "w", "snr_db": "gamma0 [dB]"}

FIGSIZE = (6.4, 4.8)


def render_svg(table, title=None):
    """Return the SVG text for ``table``; the table itself is not modified."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x_name = table.columns[0]
    x = [float(v) for v in table.column(x_name)]
    labels = [c[: -len("_c_t")] for c in table.columns if c.endswith("_c_t")]

    with matplotlib.rc_context({"svg.hashsalt": "fdas", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=FIGSIZE)
        for label in labels:
            style = STRATEGY_STYLE.get(label, {})
            ax.plot(x, [float(v) for v in table.column(f"{label}_c_t")],
                    label=label, linewidth=1.5, markersize=5, **style)
        ax.set_xlabel(X_LABELS.get(x_name, x_name))
        ax.set_ylabel("sum throughput [bits/s/Hz]")
        if title:
            ax.set_title(title)
        ax.grid(True, linestyle=":", linewidth=0.6)
        ax.legend(loc="best")
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)
    return buf.getvalue()


def write_svg(table, path, title=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(table, title))
