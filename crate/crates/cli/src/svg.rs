//! Minimal standalone SVG line plots: axes, polylines, labels. The output
//! is a pure function of the series data.

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

pub fn render(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (x_lo, x_hi) = extent(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y_lo, y_hi) = extent(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let x_of = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let y_of = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));

    // axes
    out.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    ));
    out.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN
    ));
    // zero line when the y-range crosses it
    if y_lo < 0.0 && y_hi > 0.0 {
        out.push_str(&format!(
            "<line x1=\"{m}\" y1=\"{z:.3}\" x2=\"{r}\" y2=\"{z:.3}\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n",
            m = MARGIN,
            r = WIDTH - MARGIN,
            z = y_of(0.0)
        ));
    }
    // axis range labels
    out.push_str(&format!(
        "<text x=\"{m}\" y=\"{b}\" font-size=\"12\">{x_lo:.4}</text>\n",
        m = MARGIN,
        b = HEIGHT - MARGIN + 20.0
    ));
    out.push_str(&format!(
        "<text x=\"{r}\" y=\"{b}\" text-anchor=\"end\" font-size=\"12\">{x_hi:.4}</text>\n",
        r = WIDTH - MARGIN,
        b = HEIGHT - MARGIN + 20.0
    ));
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{b}\" font-size=\"12\">{y_lo:.4}</text>\n",
        x = 4.0,
        b = HEIGHT - MARGIN
    ));
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{t}\" font-size=\"12\">{y_hi:.4}</text>\n",
        x = 4.0,
        t = MARGIN + 4.0
    ));
    out.push_str(&format!(
        "<text x=\"{x:.1}\" y=\"{y}\" text-anchor=\"middle\" font-size=\"13\">{x_label}</text>\n",
        x = WIDTH / 2.0,
        y = HEIGHT - 16.0
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{y:.1}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 {y:.1})\">{y_label}</text>\n",
        y = HEIGHT / 2.0
    ));

    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.3},{:.3}", x_of(x), y_of(y)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" font-size=\"12\" fill=\"{color}\">{}</text>\n",
            s.name,
            x = WIDTH - MARGIN + 6.0,
            y = MARGIN + 18.0 * k as f64
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_deterministic() {
        let series = [Series {
            name: "q",
            points: vec![(0.0, 1.0), (1.0, -1.0), (2.0, 0.5)],
        }];
        let a = render("t", "x", "y", &series);
        let b = render("t", "x", "y", &series);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains("<polyline"));
    }
}
