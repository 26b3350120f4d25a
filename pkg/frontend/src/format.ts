/**
 * Display formatting. Every number shown on screen is the API's value
 * passed through exactly one of these fixed-format functions; the client
 * never recomputes probabilities or degrees on its own.
 */

/** Probability as a percentage with 9 decimal digits, e.g. "99.999998466%". */
export function formatProbability(p: number): string {
  return (p * 100).toFixed(9) + "%";
}

/** Probability as a plain fraction with 12 decimal digits. */
export function formatFraction(p: number): string {
  return p.toFixed(12);
}

/** Signed degree in scientific notation, e.g. "+9.490e-9". */
export function formatDegreeSci(d: number): string {
  const sign = d < 0 ? "" : "+";
  return sign + d.toExponential(3);
}

/**
 * Signed degree in fixed notation with 12 decimals; degrees around 1e-8
 * are illegible in fixed notation alone, so the UI always shows this
 * next to the scientific form.
 */
export function formatDegreeFixed(d: number): string {
  const sign = d < 0 ? "" : "+";
  return sign + d.toFixed(12);
}

/** Both degree notations side by side. */
export function formatDegreePair(d: number): string {
  return `${formatDegreeSci(d)} (${formatDegreeFixed(d)})`;
}

/** Progress fraction as a whole percentage for the monitor bar. */
export function formatProgress(fraction: number): string {
  return Math.round(fraction * 100) + "%";
}
