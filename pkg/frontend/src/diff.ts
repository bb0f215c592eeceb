// Word-level diff between two clause texts, used to highlight what changed
// between consecutive history snapshots. Classic LCS over whitespace tokens.

export type DiffOp = "equal" | "added" | "removed";

export interface DiffSegment {
  op: DiffOp;
  text: string;
}

function tokens(text: string): string[] {
  return text.split(/\s+/).filter((t) => t.length > 0);
}

export function diffWords(oldText: string, newText: string): DiffSegment[] {
  const a = tokens(oldText);
  const b = tokens(newText);
  // lcs[i][j] = LCS length of a[i:], b[j:]
  const lcs: number[][] = Array.from({ length: a.length + 1 }, () =>
    new Array<number>(b.length + 1).fill(0),
  );
  for (let i = a.length - 1; i >= 0; i--) {
    for (let j = b.length - 1; j >= 0; j--) {
      lcs[i][j] =
        a[i] === b[j]
          ? lcs[i + 1][j + 1] + 1
          : Math.max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  const segments: DiffSegment[] = [];
  const push = (op: DiffOp, text: string) => {
    const last = segments[segments.length - 1];
    if (last && last.op === op) {
      last.text += ` ${text}`;
    } else {
      segments.push({ op, text });
    }
  };
  let i = 0;
  let j = 0;
  while (i < a.length && j < b.length) {
    if (a[i] === b[j]) {
      push("equal", a[i]);
      i++;
      j++;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      push("removed", a[i]);
      i++;
    } else {
      push("added", b[j]);
      j++;
    }
  }
  for (; i < a.length; i++) push("removed", a[i]);
  for (; j < b.length; j++) push("added", b[j]);
  return segments;
}

/** True when the diff contains no additions or removals. */
export function isUnchanged(segments: DiffSegment[]): boolean {
  return segments.every((s) => s.op === "equal");
}
