// Text-to-speech through the platform facility; silently a no-op when the
// browser has none. Never throws into the render path.

export function speak(text: string): boolean {
  const synth = (globalThis as { speechSynthesis?: SpeechSynthesis }).speechSynthesis;
  const Utterance = (globalThis as { SpeechSynthesisUtterance?: typeof SpeechSynthesisUtterance })
    .SpeechSynthesisUtterance;
  if (!synth || !Utterance) return false;
  try {
    synth.cancel(); // a new explanation replaces the old one mid-sentence too
    synth.speak(new Utterance(text));
    return true;
  } catch {
    return false;
  }
}
