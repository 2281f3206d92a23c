#!/usr/bin/env python3
"""
Quick smoke test against a running aspine server
"""

import requests

CHOICE_PROGRAM = "a :- not b.\nb :- not a.\n"

def quick_test():
    """Quick test of the aspine API"""
    base_url = "http://127.0.0.1:8000"

    print("Quick aspine API Test")
    print("=" * 40)

    # Test 1: Check if server is running
    try:
        response = requests.get(f"{base_url}/", timeout=5)
        if response.status_code == 200:
            print("SUCCESS: Server is running!")
        else:
            print(f"ERROR: Server error: {response.status_code}")
            return
    except Exception as e:
        print(f"ERROR: Cannot connect to server: {e}")
        print("TIP: Make sure to run: python start_server.py")
        return

    # Test 2: Solve, all models
    print("\nTesting solve...")
    try:
        payload = {"program": CHOICE_PROGRAM, "models": 0, "mode": "fwd", "verify": True}
        response = requests.post(f"{base_url}/solve", json=payload)
        if response.status_code == 200:
            run = response.json()["run"]
            print(f"SUCCESS: {run['status']} with {len(run['models'])} models: {run['models']}")
            print(f"   Conflicts: {run['stats']['conflicts']}, decisions: {run['stats']['decisions']}")
        else:
            print(f"ERROR: Solve failed: {response.status_code} {response.text}")
            return
    except Exception as e:
        print(f"ERROR: Solve error: {e}")
        return

    # Test 3: Oracle agrees
    print("\nTesting oracle...")
    try:
        response = requests.post(f"{base_url}/oracle", json={"program": CHOICE_PROGRAM})
        if response.status_code == 200:
            result = response.json()
            print(f"SUCCESS: Oracle found {result['count']} answer sets: {result['answer_sets']}")
        else:
            print(f"ERROR: Oracle failed: {response.status_code}")
            return
    except Exception as e:
        print(f"ERROR: Oracle error: {e}")
        return

    # Test 4: Validation report
    print("\nTesting validate...")
    try:
        response = requests.post(f"{base_url}/validate", json={"program": "p :- q.\nq :- p.\n"})
        if response.status_code == 200:
            report = response.json()["report"]
            print(f"SUCCESS: {report['nogoods']} nogoods, census matches: {report['census_matches']}")
            print(f"   Diagnostics: {report['diagnostics']}")
        else:
            print(f"ERROR: Validate failed: {response.status_code}")
    except Exception as e:
        print(f"ERROR: Validate error: {e}")

    # Test 5: A syntax error is rejected
    print("\nTesting parse errors...")
    try:
        response = requests.post(f"{base_url}/solve", json={"program": "a :- b"})
        if response.status_code == 400:
            print(f"SUCCESS: Rejected with: {response.json()['detail']}")
        else:
            print(f"ERROR: Expected 400, got {response.status_code}")
    except Exception as e:
        print(f"ERROR: Parse error check failed: {e}")

    # Test 6: Recorded runs
    print("\nTesting runs endpoint...")
    try:
        response = requests.get(f"{base_url}/runs")
        if response.status_code == 200:
            print(f"SUCCESS: {response.json()['count']} runs recorded")
        else:
            print(f"ERROR: Runs failed: {response.status_code}")
    except Exception as e:
        print(f"ERROR: Runs error: {e}")

    print("\nAll tests completed!")
    print("TIP: Open http://127.0.0.1:8000/docs for interactive API testing")

if __name__ == "__main__":
    quick_test()
