/**
 * Timestamps cross the boundary as unit-agnostic integer ticks. Native Date
 * objects convert to epoch milliseconds; numbers pass through verbatim.
 */
export type TimeInput = number | Date;

export function toTicks(t: TimeInput): number {
  if (t instanceof Date) {
    return t.getTime();
  }
  if (!Number.isInteger(t)) {
    throw new TypeError(`tick must be an integer or a Date, got ${t}`);
  }
  return t;
}
