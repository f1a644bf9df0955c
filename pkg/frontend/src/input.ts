// Manual driving input: arrow keys ramp, gamepad axes pass through.
// The app samples step(dt) at 60 Hz and ships the result as control_input;
// the server holds the last value between packets.

export const STEER_RATE = 2.0; // full-scale per second, both ramp and return
export const PEDAL_RATE = 2.0;

export interface InputState {
  steering: number; // [-1, 1]
  throttle: number; // [0, 1]
  brake: number; // [0, 1]
}

export interface GamepadAxes {
  steering?: number;
  throttle?: number;
  brake?: number;
}

function toward(value: number, target: number, maxDelta: number): number {
  if (value < target) return Math.min(value + maxDelta, target);
  if (value > target) return Math.max(value - maxDelta, target);
  return value;
}

export class DrivingInputCapture {
  private keys = new Set<string>();
  private gamepad: GamepadAxes = {};
  private state: InputState = { steering: 0, throttle: 0, brake: 0 };

  keyDown(code: string): void {
    this.keys.add(code);
  }

  keyUp(code: string): void {
    this.keys.delete(code);
  }

  setGamepadAxes(axes: GamepadAxes): void {
    this.gamepad = axes;
  }

  /** Advance the ramps by dt seconds and return the current command. */
  step(dt: number): InputState {
    const left = this.keys.has("ArrowLeft");
    const right = this.keys.has("ArrowRight");
    const up = this.keys.has("ArrowUp");
    const down = this.keys.has("ArrowDown");

    let steering: number;
    if (this.gamepad.steering !== undefined) {
      steering = Math.max(-1, Math.min(1, this.gamepad.steering));
    } else {
      const target = right === left ? 0 : right ? 1 : -1;
      steering = toward(this.state.steering, target, STEER_RATE * dt);
    }

    let throttle: number;
    if (this.gamepad.throttle !== undefined) {
      throttle = Math.max(0, Math.min(1, this.gamepad.throttle));
    } else {
      // pedals ramp while held and release instantly
      throttle = up ? toward(this.state.throttle, 1, PEDAL_RATE * dt) : 0;
    }

    let brake: number;
    if (this.gamepad.brake !== undefined) {
      brake = Math.max(0, Math.min(1, this.gamepad.brake));
    } else {
      brake = down ? toward(this.state.brake, 1, PEDAL_RATE * dt) : 0;
    }

    this.state = { steering, throttle, brake };
    return this.state;
  }
}
