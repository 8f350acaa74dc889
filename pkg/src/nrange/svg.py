"""SVG rendering of a polygon CSV.  Cosmetic; nothing is recomputed."""

from .convexgeom import ConvexRegion

SIZE = 800
MARGIN = 40


def render_svg(csv_text):
    verts = ConvexRegion.from_csv(csv_text).vertices
    xs, ys = verts.real, verts.imag
    half = max(abs(xs).max(), abs(ys).max(), 1e-12) * 1.1
    k = (SIZE - 2 * MARGIN) / (2 * half)

    def px(x, y):
        return f"{SIZE / 2 + k * x:.3f},{SIZE / 2 - k * y:.3f}"

    pts = " ".join(px(x, y) for x, y in zip(xs, ys))
    shape = (
        f'<polygon points="{pts}" fill="#4a7ab5" fill-opacity="0.35" stroke="#1f3d66" stroke-width="1.5"/>'
        if len(verts) > 2
        else f'<polyline points="{pts}" fill="none" stroke="#1f3d66" stroke-width="3"/>'
    )
    if len(verts) == 1:
        x, y = px(xs[0], ys[0]).split(",")
        shape = f'<circle cx="{x}" cy="{y}" r="4" fill="#1f3d66"/>'
    c = SIZE / 2
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n'
        f'<line x1="{MARGIN}" y1="{c}" x2="{SIZE - MARGIN}" y2="{c}" stroke="#888" stroke-width="1"/>\n'
        f'<line x1="{c}" y1="{MARGIN}" x2="{c}" y2="{SIZE - MARGIN}" stroke="#888" stroke-width="1"/>\n'
        f'<text x="{SIZE - MARGIN}" y="{c - 6}" font-size="12" text-anchor="end">{half / 1.1:.4g}</text>\n'
        f"{shape}\n"
        "</svg>\n"
    )
